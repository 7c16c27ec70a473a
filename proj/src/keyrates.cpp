#include "discordia/keyrates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "discordia/info.hpp"
#include "discordia/parallel.hpp"

namespace discordia {
namespace {

void check_cover(const Tripartition& part, std::size_t n) {
  if (part.a.empty() || part.b.empty()) throw ValidationError("partition: A and B must be non-empty");
  std::vector<int> seen(n, 0);
  for (const auto* side : {&part.a, &part.b, &part.p})
    for (int i : *side) {
      if (i < 0 || static_cast<std::size_t>(i) >= n) throw ValidationError("partition: index out of range");
      ++seen[i];
    }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw ValidationError("partition: every subsystem must appear exactly once");
}

std::vector<std::size_t> to_size(const std::vector<int>& v) { return {v.begin(), v.end()}; }

template <class Entropy>
SandwichBounds sandwich(const Tripartition& part, Entropy&& entropy) {
  std::vector<int> ab = part.a;
  ab.insert(ab.end(), part.b.begin(), part.b.end());
  const double s_ab = entropy(ab);
  SandwichBounds out;
  out.lower = std::max(entropy(part.b) - s_ab, entropy(part.a) - s_ab);
  if (!part.p.empty()) {
    std::vector<int> all = ab;
    all.insert(all.end(), part.p.begin(), part.p.end());
    out.noise_mi = std::max(s_ab + entropy(part.p) - entropy(all), 0.0);
  }
  out.upper = out.lower + out.noise_mi;
  return out;
}

}  // namespace

CoherentInfos coherent_infos(const QState& s) {
  if (s.parties() != 2) throw ValidationError("coherent_infos: state must be bipartite");
  const std::size_t a[] = {0}, b[] = {1};
  const double s_ab = vn_entropy(s);
  return {entropy_bits(partial_trace(s.matrix(), s.dims(), b)) - s_ab,
          entropy_bits(partial_trace(s.matrix(), s.dims(), a)) - s_ab};
}

CoherentInfos coherent_infos(const GaussianState& s) {
  if (s.modes() != 2) throw ValidationError("coherent_infos: Gaussian state must have two modes");
  const int a[] = {0}, b[] = {1};
  const double s_ab = gaussian_entropy(s);
  return {gaussian_entropy(s, b) - s_ab, gaussian_entropy(s, a) - s_ab};
}

SandwichBounds trusted_noise_bounds(const QState& s, const Tripartition& part) {
  check_cover(part, s.parties());
  return sandwich(part, [&](const std::vector<int>& idx) {
    const auto keep = to_size(idx);
    return entropy_bits(partial_trace(s.matrix(), s.dims(), keep));
  });
}

SandwichBounds trusted_noise_bounds(const GaussianState& s, const Tripartition& part) {
  check_cover(part, static_cast<std::size_t>(s.modes()));
  return sandwich(part, [&](const std::vector<int>& idx) { return gaussian_entropy(s, idx); });
}

double discord_rate_bound(const QState& s) {
  if (s.dims() != std::vector<int>{2, 2}) throw ValidationError("discord_rate_bound: finite states must be two-qubit");
  return std::max(discord(s, 1).discord, discord(s, 0).discord);
}

double discord_rate_bound(const GaussianState& s) {
  if (s.modes() != 2) throw ValidationError("discord_rate_bound: Gaussian state must have two modes");
  return std::max(gaussian_discord(s, 1).value, gaussian_discord(s, 0).value);
}

RateReport lossy_rr_rate(double eta, double mu) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta: transmissivity must lie in [0, 1]");
  if (eta == 0.0 || eta == 1.0) throw DomainError("lossy_rr_rate: eta must lie strictly inside (0, 1)");
  if (!(mu >= 1.0)) throw ValidationError("mu: must be >= 1");

  const GaussianState abe = apply_loss(tmsv(mu), 1, LossyChannel(eta), true);
  const int ab_modes[] = {0, 1}, be_modes[] = {1, 2};
  const GaussianState ab = marginal(abe, ab_modes);
  const GaussianState be = marginal(abe, be_modes);

  RateReport r;
  r.eta = eta;
  r.mu = mu;
  const auto ci = coherent_infos(ab);
  r.coherent_info = ci.coherent;
  r.reverse_coherent_info = ci.reverse_coherent;
  r.ed_lower = std::max(ci.coherent, ci.reverse_coherent);
  r.discord_ab = gaussian_discord(ab, 1).value;
  r.discord_ba = gaussian_discord(ab, 0).value;
  r.rate_upper_discord = std::max(r.discord_ab, r.discord_ba);
  r.r_reverse = r.discord_ba;
  r.ppt_be = ppt_min_symplectic(be, 1);
  r.ef_be_separable = r.ppt_be >= 1.0 - bona_fide_tol(be.cov());
  r.plob = plob(eta).value;
  return r;
}

PlobValue plob(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta: transmissivity must lie in [0, 1]");
  if (eta == 1.0) throw DomainError("plob: capacity is infinite at eta = 1");
  return {-std::log1p(-eta) / std::numbers::ln2, eta / std::numbers::ln2};
}

std::vector<ConvergenceRow> plob_convergence(double eta, std::span<const double> mus) {
  static constexpr double kDefault[] = {1e2, 1e3, 1e4};
  if (mus.empty()) mus = kDefault;
  const double target = plob(eta).value;
  std::vector<ConvergenceRow> rows(mus.size());
  parallel_for(mus.size(), [&](std::size_t i) {
    const double r = lossy_rr_rate(eta, mus[i]).r_reverse;
    rows[i] = {mus[i], r, target - r};
  });
  return rows;
}

std::vector<SweepRow> cv_sweep(std::span<const double> etas, std::span<const double> mus) {
  std::vector<SweepRow> rows(etas.size() * mus.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const double eta = etas[i / mus.size()], mu = mus[i % mus.size()];
    const RateReport r = lossy_rr_rate(eta, mu);
    rows[i] = {eta, mu, r.reverse_coherent_info, r.discord_ba, r.plob, r.plob - r.discord_ba};
  });
  return rows;
}

}  // namespace discordia
