#include "discordia/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "discordia/optimize.hpp"

namespace discordia {
namespace {

double g_unchecked(double nu) {
  if (nu <= 1.0) return 0.0;
  const double a = (nu + 1.0) / 2.0, b = (nu - 1.0) / 2.0;
  return a * std::log2(a) - b * std::log2(b);
}

Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

void require_mode(const GaussianState& s, int mode) {
  if (mode < 0 || mode >= s.modes()) throw ValidationError("mode index out of range");
}

}  // namespace

GaussianState::GaussianState(int modes, Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : modes_(modes), mean_(std::move(mean)), cov_(std::move(cov)) {
  if (modes_ < 1) throw ValidationError("modes: at least one mode required");
  if (mean_.size() != 2 * modes_) throw ValidationError("mean: length must be 2*modes");
  if (auto err = check_covariance(modes_, cov_); !err.empty()) throw ValidationError(err);
}

LossyChannel::LossyChannel(double e) : eta(e) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta: transmissivity must lie in [0, 1]");
}

Eigen::MatrixXd omega(int modes) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    w(2 * k, 2 * k + 1) = 1.0;
    w(2 * k + 1, 2 * k) = -1.0;
  }
  return w;
}

double bona_fide_tol(const Eigen::MatrixXd& cov) {
  const double n = cov.size() ? cov.cwiseAbs().maxCoeff() : 0.0;
  return 1e-9 + 1e-14 * n * n;
}

std::string check_covariance(int modes, const Eigen::MatrixXd& cov) {
  if (cov.rows() != 2 * modes || cov.cols() != 2 * modes) return "cov: shape must be (2*modes) x (2*modes)";
  if (!cov.allFinite()) return "cov: non-finite entry";
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10) return "cov: symmetric violated";
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) return "cov: bona fide violated (not positive definite)";
  const auto nu = symplectic_spectrum(cov);
  if (nu.front() < 1.0 - bona_fide_tol(cov)) {
    std::ostringstream os;
    os << "cov: bona fide violated (symplectic eigenvalue " << nu.front() << " < 1)";
    return os.str();
  }
  return {};
}

std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& cov) {
  const int m = static_cast<int>(cov.rows() / 2);
  const Eigen::MatrixXd sym = 0.5 * (cov + cov.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  if (llt.info() != Eigen::Success) throw ValidationError("cov: bona fide violated (not positive definite)");
  const Eigen::MatrixXd l = llt.matrixL();
  // LᵀΩL is antisymmetric; i·LᵀΩL is Hermitian with eigenvalues ±ν.
  const Eigen::MatrixXd a = l.transpose() * omega(m) * l;
  const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues();
  std::vector<double> nu(ev.data() + m, ev.data() + 2 * m);
  std::sort(nu.begin(), nu.end());
  return nu;
}

std::vector<double> symplectic_eigenvalues(const GaussianState& s) { return symplectic_spectrum(s.cov()); }

GaussianState vacuum(int modes) {
  return GaussianState(modes, Eigen::VectorXd::Zero(2 * modes), Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

GaussianState thermal(double variance) {
  if (!(variance >= 1.0)) throw ValidationError("thermal: variance must be >= 1");
  return GaussianState(1, Eigen::VectorXd::Zero(2), variance * Eigen::MatrixXd::Identity(2, 2));
}

GaussianState tmsv(double mu) {
  if (!(mu >= 1.0)) throw ValidationError("tmsv: mu must be >= 1");
  const double c = std::sqrt(mu * mu - 1.0);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
  v.diagonal().setConstant(mu);
  v(0, 2) = v(2, 0) = c;
  v(1, 3) = v(3, 1) = -c;
  return GaussianState(2, Eigen::VectorXd::Zero(4), std::move(v));
}

GaussianState direct_sum(const GaussianState& a, const GaussianState& b) {
  const int n = 2 * (a.modes() + b.modes());
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  v.topLeftCorner(2 * a.modes(), 2 * a.modes()) = a.cov();
  v.bottomRightCorner(2 * b.modes(), 2 * b.modes()) = b.cov();
  Eigen::VectorXd mean(n);
  mean << a.mean(), b.mean();
  return GaussianState(a.modes() + b.modes(), std::move(mean), std::move(v));
}

GaussianState marginal(const GaussianState& s, std::span<const int> modes) {
  if (modes.empty()) throw ValidationError("marginal: empty mode set");
  const int k = static_cast<int>(modes.size());
  Eigen::MatrixXd v(2 * k, 2 * k);
  Eigen::VectorXd mean(2 * k);
  for (int i = 0; i < k; ++i) {
    require_mode(s, modes[i]);
    mean.segment<2>(2 * i) = s.mean().segment<2>(2 * modes[i]);
    for (int j = 0; j < k; ++j) v.block<2, 2>(2 * i, 2 * j) = s.cov().block<2, 2>(2 * modes[i], 2 * modes[j]);
  }
  return GaussianState(k, std::move(mean), std::move(v));
}

GaussianState beam_splitter(const GaussianState& s, int i, int j, double eta) {
  require_mode(s, i);
  require_mode(s, j);
  if (i == j) throw ValidationError("beam splitter: modes must differ");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta: transmissivity must lie in [0, 1]");
  const double t = std::sqrt(eta), r = std::sqrt(1.0 - eta);
  Eigen::MatrixXd sm = Eigen::MatrixXd::Identity(2 * s.modes(), 2 * s.modes());
  for (int q = 0; q < 2; ++q) {
    sm(2 * i + q, 2 * i + q) = t;
    sm(2 * i + q, 2 * j + q) = r;
    sm(2 * j + q, 2 * i + q) = -r;
    sm(2 * j + q, 2 * j + q) = t;
  }
  Eigen::MatrixXd v = sm * s.cov() * sm.transpose();
  v = 0.5 * (v + v.transpose()).eval();
  return GaussianState(s.modes(), sm * s.mean(), std::move(v));
}

GaussianState apply_loss(const GaussianState& s, int mode, const LossyChannel& ch, bool keep_env) {
  require_mode(s, mode);
  const GaussianState joint = beam_splitter(direct_sum(s, vacuum(1)), mode, s.modes(), ch.eta);
  if (keep_env) return joint;
  std::vector<int> keep(s.modes());
  for (int k = 0; k < s.modes(); ++k) keep[k] = k;
  return marginal(joint, keep);
}

double g_entropy(double nu) {
  if (!(nu >= 1.0 - 1e-9)) throw DomainError("g_entropy: symplectic eigenvalue below 1");
  return g_unchecked(nu);
}

double gaussian_entropy(const GaussianState& s) {
  double h = 0.0;
  for (double nu : symplectic_eigenvalues(s)) h += g_unchecked(nu);
  return h;
}

double gaussian_entropy(const GaussianState& s, std::span<const int> modes) {
  return gaussian_entropy(marginal(s, modes));
}

double gaussian_mutual_info(const GaussianState& s, std::span<const int> a, std::span<const int> b) {
  std::vector<int> ab(a.begin(), a.end());
  ab.insert(ab.end(), b.begin(), b.end());
  return gaussian_entropy(s, a) + gaussian_entropy(s, b) - gaussian_entropy(s, ab);
}

double dyne_conditional_entropy(const GaussianState& s, int measured_mode, double lambda, double theta) {
  if (s.modes() != 2) throw ValidationError("general-dyne conditioning needs a two-mode state");
  require_mode(s, measured_mode);
  if (!(lambda > 0.0)) throw ValidationError("general-dyne: lambda must be positive");
  const int other = 1 - measured_mode;
  const Eigen::Matrix2d a = s.cov().block<2, 2>(2 * measured_mode, 2 * measured_mode);
  const Eigen::Matrix2d b = s.cov().block<2, 2>(2 * other, 2 * other);
  const Eigen::Matrix2d c = s.cov().block<2, 2>(2 * other, 2 * measured_mode);
  const Eigen::Matrix2d r = rotation(theta);
  const Eigen::Matrix2d vm = r * Eigen::Vector2d(lambda, 1.0 / lambda).asDiagonal() * r.transpose();
  Eigen::Matrix2d k = a + vm;
  // Ridge for near-singular A + V_m at the measurement extremes.
  if (std::abs(k.determinant()) < 1e-12 * std::max(1.0, k.cwiseAbs().maxCoeff())) k += 1e-12 * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d cond = b - c * k.inverse() * c.transpose();
  const double det = cond.determinant();
  return g_unchecked(std::sqrt(std::max(det, 0.0)));
}

GaussianDiscord gaussian_discord(const GaussianState& s, int measured_mode, const DyneSearchOptions& opts) {
  if (s.modes() != 2) throw ValidationError("gaussian_discord: state must have exactly two modes");
  require_mode(s, measured_mode);
  const int other = 1 - measured_mode;
  const int ma[] = {measured_mode}, mb[] = {other}, both[] = {0, 1};
  const double s_measured = gaussian_entropy(s, ma);
  const double s_joint = gaussian_entropy(s, both);

  const double lo = opts.log10_lambda_min, hi = opts.log10_lambda_max;
  auto objective = [&](std::span<const double> x) {
    const double l = std::clamp(x[0], lo, hi);
    return -dyne_conditional_entropy(s, measured_mode, std::pow(10.0, l), x[1]);
  };
  const auto lambdas = linspace(lo, hi, opts.lambda_points);
  std::vector<double> thetas(static_cast<std::size_t>(opts.theta_points));
  for (int j = 0; j < opts.theta_points; ++j) thetas[j] = std::numbers::pi * j / opts.theta_points;
  NelderMeadOptions nm;
  nm.diameter_tol = opts.diameter_tol;
  const auto best = maximize_grid_refine(objective, lambdas, thetas, opts.refine_starts, nm);

  GaussianDiscord out;
  out.mutual_info = gaussian_mutual_info(s, ma, mb);
  out.value = std::max(s_measured - s_joint - best.best.value, 0.0);
  out.lambda = std::pow(10.0, std::clamp(best.best.x[0], lo, hi));
  out.theta = best.best.x[1];
  return out;
}

double ppt_min_symplectic(const GaussianState& s, int partition_mode) {
  if (s.modes() != 2) throw ValidationError("ppt: only two-mode states (1x1 split) are supported");
  require_mode(s, partition_mode);
  Eigen::VectorXd t = Eigen::VectorXd::Ones(4);
  t(2 * partition_mode + 1) = -1.0;
  const Eigen::MatrixXd v = t.asDiagonal() * s.cov() * t.asDiagonal();
  return symplectic_spectrum(v).front();
}

}  // namespace discordia
