#include "discordia/random.hpp"

#include <cmath>

namespace discordia {
namespace {

std::vector<double> dirichlet_ones(int n, Rng& rng) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += (x = ex(rng));
  for (auto& x : w) x /= total;
  return w;
}

CVector bell_vector(int k) {
  const double r = 1.0 / std::sqrt(2.0);
  CVector v = CVector::Zero(4);
  switch (k) {
    case 0: v(0) = r; v(3) = r; break;   // Φ+
    case 1: v(0) = r; v(3) = -r; break;  // Φ−
    case 2: v(1) = r; v(2) = r; break;   // Ψ+
    default: v(1) = r; v(2) = -r; break; // Ψ−
  }
  return v;
}

}  // namespace

CMatrix ginibre(int d, Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = cplx(n(rng), n(rng));
  return g;
}

QState random_state(std::vector<int> dims, Rng& rng) {
  int d = 1;
  for (int x : dims) d *= x;
  const CMatrix g = ginibre(d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return QState(std::move(dims), std::move(rho));
}

CMatrix random_unitary(int d, Rng& rng) {
  const CMatrix g = ginibre(d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * identity(d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const cplx rii = r(i, i);
    const double a = std::abs(rii);
    if (a > 0) q.col(i) *= rii / a;
  }
  return q;
}

QState random_bell_diagonal(Rng& rng) {
  const auto w = dirichlet_ones(4, rng);
  CMatrix m = CMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    const CVector v = bell_vector(k);
    m += w[k] * v * v.adjoint();
  }
  return QState({2, 2}, std::move(m));
}

QState random_classical_classical(Rng& rng) {
  const auto w = dirichlet_ones(4, rng);
  const CMatrix ua = random_unitary(2, rng);
  const CMatrix ub = random_unitary(2, rng);
  CMatrix m = CMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const CVector a = ua.col(i), b = ub.col(j);
      m += w[2 * i + j] * kron(a * a.adjoint(), b * b.adjoint());
    }
  m = 0.5 * (m + m.adjoint()).eval();
  return QState({2, 2}, std::move(m));
}

QState random_classical_quantum(Rng& rng) {
  const auto w = dirichlet_ones(2, rng);
  const CMatrix ub = random_unitary(2, rng);
  CMatrix m = CMatrix::Zero(4, 4);
  for (int b = 0; b < 2; ++b) {
    const CVector v = ub.col(b);
    m += w[b] * kron(random_state({2}, rng).matrix(), v * v.adjoint());
  }
  m = 0.5 * (m + m.adjoint()).eval();
  return QState({2, 2}, std::move(m));
}

}  // namespace discordia
