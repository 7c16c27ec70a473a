#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "discordia/game.hpp"

namespace discordia {
namespace {

// Plug-in entropy in bits plus the Miller–Madow term (m − 1) / (2N ln 2),
// m = number of occupied bins.
double entropy_mm(const std::vector<long>& counts, long n) {
  double h = 0.0;
  int occupied = 0;
  for (long c : counts) {
    if (c == 0) continue;
    ++occupied;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h + (occupied - 1) / (2.0 * static_cast<double>(n) * std::numbers::ln2);
}

}  // namespace

double mi_miller_madow(std::span<const int> x, std::span<const int> y, int nx, int ny) {
  if (x.size() != y.size()) throw ValidationError("mi estimator: sample sequences differ in length");
  if (x.empty()) throw ValidationError("mi estimator: no samples");
  if (nx < 1 || ny < 1) throw ValidationError("mi estimator: alphabet sizes must be positive");
  const long n = static_cast<long>(x.size());
  std::vector<long> cx(nx, 0), cy(ny, 0), cxy(static_cast<std::size_t>(nx) * ny, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= nx || y[i] < 0 || y[i] >= ny) throw ValidationError("mi estimator: symbol out of range");
    ++cx[x[i]];
    ++cy[y[i]];
    ++cxy[static_cast<std::size_t>(x[i]) * ny + y[i]];
  }
  const double mi = entropy_mm(cx, n) + entropy_mm(cy, n) - entropy_mm(cxy, n);
  return std::clamp(mi, 0.0, std::log2(static_cast<double>(std::min(nx, ny))));
}

}  // namespace discordia
