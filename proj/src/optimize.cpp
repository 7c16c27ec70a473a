#include "discordia/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "discordia/errors.hpp"

namespace discordia {
namespace {

double diameter(const std::vector<std::vector<double>>& simplex) {
  double d = 0.0;
  for (std::size_t i = 0; i < simplex.size(); ++i)
    for (std::size_t j = i + 1; j < simplex.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < simplex[i].size(); ++k) {
        const double t = simplex[i][k] - simplex[j][k];
        s += t * t;
      }
      d = std::max(d, std::sqrt(s));
    }
  return d;
}

}  // namespace

OptimumPoint nelder_mead_max(const Objective& f, std::vector<double> x0, std::span<const double> step,
                             const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (step.size() != n) throw ValidationError("nelder_mead: step size does not match dimension");

  // Minimize g = -f internally.
  auto g = [&](const std::vector<double>& x) { return -f(x); };

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = g(pts[i]);

  std::vector<std::size_t> order(n + 1);
  int it = 0;
  auto combine = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = c[k] + t * (w[k] - c[k]);
    return r;
  };

  for (; it < opts.max_iter; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    if (diameter(pts) < opts.diameter_tol) break;

    const std::size_t worst = order[n], second = order[n - 1], best = order[0];
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[order[i]][k] / static_cast<double>(n);

    const auto xr = combine(centroid, pts[worst], -1.0);
    const double fr = g(xr);
    if (fr < vals[best]) {
      const auto xe = combine(centroid, pts[worst], -2.0);
      const double fe = g(xe);
      if (fe < fr) { pts[worst] = xe; vals[worst] = fe; }
      else { pts[worst] = xr; vals[worst] = fr; }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const auto xc = outside ? combine(centroid, xr, 0.5) : combine(centroid, pts[worst], 0.5);
    const double fc = g(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t idx = order[i];
      pts[idx] = combine(pts[best], pts[idx], 0.5);
      vals[idx] = g(pts[idx]);
    }
  }

  const auto best_it = std::min_element(vals.begin(), vals.end());
  const std::size_t b = static_cast<std::size_t>(best_it - vals.begin());
  return OptimumPoint{pts[b], -vals[b], it};
}

GridRefineResult maximize_grid_refine(const Objective& f, std::span<const double> xs, std::span<const double> ys,
                                      int top, const NelderMeadOptions& opts) {
  if (xs.empty() || ys.empty()) throw ValidationError("grid: empty axis");
  struct Cell {
    double value;
    std::size_t i, j;
  };
  std::vector<Cell> cells;
  cells.reserve(xs.size() * ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const double x[2] = {xs[i], ys[j]};
      cells.push_back({f(x), i, j});
    }
  // Stable ordering keeps ties deterministic.
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.value > b.value; });

  auto spacing = [](std::span<const double> axis, std::size_t i) {
    if (axis.size() < 2) return 0.1;
    return i + 1 < axis.size() ? axis[i + 1] - axis[i] : axis[i] - axis[i - 1];
  };

  GridRefineResult out;
  out.best_grid_value = cells.front().value;
  out.best_grid_x = {xs[cells.front().i], ys[cells.front().j]};
  out.best = OptimumPoint{out.best_grid_x, out.best_grid_value, 0};

  const std::size_t n_start = std::min<std::size_t>(static_cast<std::size_t>(std::max(top, 1)), cells.size());
  for (std::size_t s = 0; s < n_start; ++s) {
    const Cell& c = cells[s];
    const double step[2] = {0.5 * spacing(xs, c.i), 0.5 * spacing(ys, c.j)};
    OptimumPoint p = nelder_mead_max(f, {xs[c.i], ys[c.j]}, step, opts);
    if (p.value > out.best.value) out.best = std::move(p);
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(std::max(n, 0)));
  if (n == 1) v[0] = lo;
  for (int i = 0; n > 1 && i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace discordia
