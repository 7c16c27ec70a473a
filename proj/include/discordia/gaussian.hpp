#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "discordia/errors.hpp"

namespace discordia {

/// Gaussian state of m bosonic modes in shot-noise units (vacuum covariance =
/// identity), quadratures ordered (x1, p1, x2, p2, ...).
class GaussianState {
 public:
  GaussianState(int modes, Eigen::VectorXd mean, Eigen::MatrixXd cov);

  int modes() const { return modes_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

 private:
  int modes_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Pure-loss channel; the Stinespring dilation is a beam splitter of
/// transmissivity eta against a vacuum environment mode.
struct LossyChannel {
  double eta;
  explicit LossyChannel(double eta);
};

/// ⊕ [[0, 1], [−1, 0]].
Eigen::MatrixXd omega(int modes);

/// Tolerance on symplectic eigenvalues ≥ 1: 1e−9 at unit scale, widened by
/// 1e−14·‖V‖² for large covariances where rounding of the entries alone moves
/// the spectrum by that much.
double bona_fide_tol(const Eigen::MatrixXd& cov);

/// Returns an empty string for a valid covariance, otherwise a diagnostic.
std::string check_covariance(int modes, const Eigen::MatrixXd& cov);

/// Symplectic spectrum (ascending, one value per mode) of a positive definite
/// covariance matrix. Does not require the bona fide condition, so it also
/// serves partially transposed matrices.
std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& cov);
std::vector<double> symplectic_eigenvalues(const GaussianState& s);

GaussianState vacuum(int modes);
/// Single-mode thermal state with quadrature variance v = 2n̄ + 1.
GaussianState thermal(double variance);
/// Two-mode squeezed vacuum with local variance mu ≥ 1.
GaussianState tmsv(double mu);
GaussianState direct_sum(const GaussianState& a, const GaussianState& b);
/// Reduced state on the listed modes, in the listed order.
GaussianState marginal(const GaussianState& s, std::span<const int> modes);

/// Beam splitter of transmissivity eta between modes i and j:
/// a_i → √η a_i + √(1−η) a_j, a_j → −√(1−η) a_i + √η a_j.
GaussianState beam_splitter(const GaussianState& s, int i, int j, double eta);

/// Sends `mode` through the lossy channel. The environment mode is appended
/// as the last mode when keep_env is set, otherwise traced out.
GaussianState apply_loss(const GaussianState& s, int mode, const LossyChannel& ch, bool keep_env);

/// Entropy (bits) of a mode with symplectic eigenvalue nu.
double g_entropy(double nu);
double gaussian_entropy(const GaussianState& s);
double gaussian_entropy(const GaussianState& s, std::span<const int> modes);
double gaussian_mutual_info(const GaussianState& s, std::span<const int> a, std::span<const int> b);

struct DyneSearchOptions {
  int lambda_points = 60;
  int theta_points = 30;
  double log10_lambda_min = -3.0;
  double log10_lambda_max = 3.0;
  int refine_starts = 3;
  double diameter_tol = 1e-6;
};

/// Entropy of the unmeasured mode conditioned on a general-dyne measurement
/// of `measured_mode` with covariance R(θ) diag(λ, 1/λ) R(θ)ᵀ.
double dyne_conditional_entropy(const GaussianState& s, int measured_mode, double lambda, double theta);

struct GaussianDiscord {
  double value = 0.0;
  double mutual_info = 0.0;
  double lambda = 1.0;
  double theta = 0.0;
};

/// δ(other | measured_mode) minimized over Gaussian general-dyne measurements.
GaussianDiscord gaussian_discord(const GaussianState& s, int measured_mode, const DyneSearchOptions& opts = {});

/// Smallest symplectic eigenvalue of the covariance after transposing
/// `partition_mode` (momentum sign flip). Two-mode states only.
double ppt_min_symplectic(const GaussianState& s, int partition_mode);

}  // namespace discordia
