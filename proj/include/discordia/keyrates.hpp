#pragma once

#include <span>
#include <vector>

#include "discordia/gaussian.hpp"
#include "discordia/qmat.hpp"

namespace discordia {

struct CoherentInfos {
  double coherent = 0.0;          // S(B) − S(AB)
  double reverse_coherent = 0.0;  // S(A) − S(AB)
};

CoherentInfos coherent_infos(const QState& s);
CoherentInfos coherent_infos(const GaussianState& s);

/// Subsystem (or mode) index sets for Alice, Bob and the trusted-noise
/// system P. An empty P means no trusted noise.
struct Tripartition {
  std::vector<int> a;
  std::vector<int> b;
  std::vector<int> p;
};

struct SandwichBounds {
  double lower = 0.0;   // max(coherent, reverse coherent) on ρ_AB
  double upper = 0.0;   // lower + I(AB, P)
  double noise_mi = 0.0;
};

SandwichBounds trusted_noise_bounds(const QState& s, const Tripartition& part);
SandwichBounds trusted_noise_bounds(const GaussianState& s, const Tripartition& part);

/// max{δ(A|B), δ(B|A)} for a two-qubit state or a two-mode Gaussian state.
double discord_rate_bound(const QState& s);
double discord_rate_bound(const GaussianState& s);

struct RateReport {
  double eta = 0.0;
  double mu = 1.0;
  double coherent_info = 0.0;
  double reverse_coherent_info = 0.0;
  double ed_lower = 0.0;
  double discord_ab = 0.0;
  double discord_ba = 0.0;
  double rate_upper_discord = 0.0;
  double r_reverse = 0.0;
  double ppt_be = 0.0;
  bool ef_be_separable = false;
  double plob = 0.0;
};

/// TMSV(mu) with its second mode sent through a lossy channel of
/// transmissivity eta; the environment is kept for the Bob–Eve check.
RateReport lossy_rr_rate(double eta, double mu);

struct PlobValue {
  double value = 0.0;          // −log2(1 − η)
  double linearization = 0.0;  // η / ln 2
};

PlobValue plob(double eta);

struct ConvergenceRow {
  double mu;
  double r_reverse;
  double gap;  // plob − r_reverse
};

/// r_reverse over an increasing list of mu values (default 1e2, 1e3, 1e4).
std::vector<ConvergenceRow> plob_convergence(double eta, std::span<const double> mus = {});

struct SweepRow {
  double eta;
  double mu;
  double rci;
  double discord_ba;
  double plob;
  double gap;
};

/// lossy_rr_rate over the eta × mu grid (eta-major), evaluated on worker threads.
std::vector<SweepRow> cv_sweep(std::span<const double> etas, std::span<const double> mus);

}  // namespace discordia
