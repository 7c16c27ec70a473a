#pragma once

// Test-only reference computations. These deliberately avoid the library's
// partial trace, projection and optimizer code paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

inline double h2(double p) {
  auto t = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return t(p) + t(1.0 - p);
}

/// Entropy of a 2x2 Hermitian unit-trace matrix via its closed-form spectrum.
inline double qubit_entropy(const Eigen::Matrix2cd& m) {
  const double tr = m.trace().real();
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double disc = std::sqrt(std::max(0.0, (a - d) * (a - d) + 4.0 * std::norm(m(0, 1))));
  return h2(std::clamp((tr + disc) / (2.0 * tr), 0.0, 1.0));
}

/// J(A|B) of a two-qubit state for the basis with Bloch angles (θ, φ) on B,
/// computed with explicit index arithmetic.
inline double j_for_angles(const Eigen::Matrix4cd& rho, double theta, double phi) {
  const cplx e = std::polar(1.0, phi);
  const Eigen::Vector2cd plus(std::cos(theta / 2), e * std::sin(theta / 2));
  const Eigen::Vector2cd minus(std::sin(theta / 2), -e * std::cos(theta / 2));
  Eigen::Matrix2cd rho_a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) rho_a(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  double cond = 0.0;
  for (const auto& v : {plus, minus}) {
    Eigen::Matrix2cd c = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int b = 0; b < 2; ++b)
          for (int bp = 0; bp < 2; ++bp) c(i, j) += std::conj(v(b)) * rho(2 * i + b, 2 * j + bp) * v(bp);
    const double p = c.trace().real();
    if (p > 1e-14) cond += p * qubit_entropy(c / p);
  }
  return qubit_entropy(rho_a) - cond;
}

/// Brute-force J(A|B): n×n (θ, φ) grid, then repeated local grid zooms.
inline double j_bruteforce(const Eigen::Matrix4cd& rho, int n = 60) {
  double best = -1.0, bt = 0.0, bp = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double t = std::numbers::pi * i / (n - 1), p = 2.0 * std::numbers::pi * k / n;
      const double v = j_for_angles(rho, t, p);
      if (v > best) best = v, bt = t, bp = p;
    }
  double dt = std::numbers::pi / (n - 1), dp = 2.0 * std::numbers::pi / n;
  for (int zoom = 0; zoom < 30; ++zoom) {
    const double ct = bt, cp = bp;
    for (int i = -5; i <= 5; ++i)
      for (int k = -5; k <= 5; ++k) {
        const double t = ct + dt * i / 5.0, p = cp + dp * k / 5.0;
        const double v = j_for_angles(rho, t, p);
        if (v > best) best = v, bt = t, bp = p;
      }
    dt /= 2.5;
    dp /= 2.5;
  }
  return best;
}

inline double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

/// Thermal state photon-number distribution at mean n̄, truncated at `cutoff`.
inline std::vector<double> thermal_weights(double nbar, int cutoff) {
  std::vector<double> w(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) w[n] = std::pow(nbar, n) / std::pow(nbar + 1.0, n + 1);
  return w;
}

inline double log_binom(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

/// Spectrum of ρ_AB for TMSV(n̄) with loss η on mode B, from the Fock-space
/// amplitudes ψ(n, k, e) = c_n √C(n,k) η^{k/2} (1−η)^{e/2}, n = k + e.
/// The nonzero spectrum of ρ_AB = W W† equals that of the Gram matrix W† W,
/// whose columns are indexed by the environment photon number e.
inline Eigen::VectorXd lossy_tmsv_ab_spectrum(double nbar, double eta, int cutoff) {
  const auto w = thermal_weights(nbar, cutoff);
  // W: rows (n, k) with n = k + e, columns e.
  const int rows = (cutoff + 1) * (cutoff + 1);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(rows, cutoff + 1);
  for (int n = 0; n <= cutoff; ++n)
    for (int k = 0; k <= n; ++k) {
      const int e = n - k;
      double amp = std::sqrt(w[n]);
      amp *= std::exp(0.5 * log_binom(n, k));
      amp *= std::pow(eta, 0.5 * k) * std::pow(1.0 - eta, 0.5 * e);
      W(n * (cutoff + 1) + k, e) = amp;
    }
  const Eigen::MatrixXd gram = W.transpose() * W;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues();
}

/// Symplectic eigenvalues {ν1, ν2} of a two-mode Gaussian state recovered
/// from its density-matrix spectrum: purity Π 1/ν and largest eigenvalue
/// Π 2/(ν + 1) fix the pair.
inline std::pair<double, double> nus_from_spectrum(const Eigen::VectorXd& ev) {
  const double purity = ev.squaredNorm();
  const double lmax = ev.maxCoeff();
  const double prod = 1.0 / purity;
  const double sum = 4.0 / lmax - 1.0 - prod;
  const double disc = std::sqrt(std::max(0.0, sum * sum - 4.0 * prod));
  return {(sum - disc) / 2.0, (sum + disc) / 2.0};
}

/// Closed-form bosonic entropy of a mode with symplectic eigenvalue ν.
inline double g_bits(double nu) {
  if (nu <= 1.0) return 0.0;
  const double a = (nu + 1) / 2, b = (nu - 1) / 2;
  return a * std::log2(a) - b * std::log2(b);
}

/// Entropy of a one- or two-mode covariance matrix from its symplectic
/// invariants det V and Δ = det A + det B + 2 det C.
inline double small_gaussian_entropy(const Eigen::MatrixXd& v) {
  if (v.rows() == 2) return g_bits(std::sqrt(v.determinant()));
  const Eigen::Matrix2d a = v.block<2, 2>(0, 0), b = v.block<2, 2>(2, 2), c = v.block<2, 2>(0, 2);
  const double delta = a.determinant() + b.determinant() + 2 * c.determinant();
  const double root = std::sqrt(std::max(0.0, delta * delta - 4 * v.determinant()));
  return g_bits(std::sqrt((delta + root) / 2)) + g_bits(std::sqrt(std::max(1.0, (delta - root) / 2)));
}

}  // namespace oracle
