#include "discordia/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace discordia {
namespace {

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

// Splits the full index space into (kept, traced) digit groups. Row-major
// with subsystem 0 most significant.
struct IndexSplit {
  int kept_dim = 1;
  int traced_dim = 1;
  std::vector<int> full;  // full[kept * traced_dim + traced]
};

IndexSplit split_indices(const std::vector<int>& dims, const std::vector<bool>& is_kept) {
  const std::size_t n = dims.size();
  IndexSplit out;
  for (std::size_t i = 0; i < n; ++i) (is_kept[i] ? out.kept_dim : out.traced_dim) *= dims[i];
  out.full.assign(static_cast<std::size_t>(out.kept_dim) * out.traced_dim, 0);

  const int total = product(dims);
  std::vector<int> digit(n, 0);
  for (int idx = 0; idx < total; ++idx) {
    int k = 0, t = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_kept[i]) k = k * dims[i] + digit[i];
      else t = t * dims[i] + digit[i];
    }
    out.full[static_cast<std::size_t>(k) * out.traced_dim + t] = idx;
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  return out;
}

void check_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw ValidationError("dims: at least one subsystem required");
  for (int d : dims)
    if (d < 2) throw ValidationError("dims: every subsystem dimension must be >= 2");
}

}  // namespace

std::string check_density(const std::vector<int>& dims, const CMatrix& m) {
  if (m.rows() != m.cols()) return "square: matrix is not square";
  if (m.rows() != product(dims)) return "dims: matrix side does not equal the product of dims";
  if (max_abs_diff(m, m.adjoint()) > kValidationTol) return "hermitian: |M - M^dagger| exceeds 1e-10";
  if (std::abs(m.trace() - cplx(1.0)) > kValidationTol) return "unit trace: |Tr M - 1| exceeds 1e-10";
  const Eigen::VectorXd ev = hermitian_eig(m).values;
  if (ev.size() > 0 && ev(0) < -kValidationTol) {
    std::ostringstream os;
    os << "positive semidefinite: minimum eigenvalue " << ev(0) << " below -1e-10";
    return os.str();
  }
  return {};
}

QState::QState(std::vector<int> dims, CMatrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  check_dims(dims_);
  if (auto err = check_density(dims_, matrix_); !err.empty()) throw ValidationError("invalid state: " + err);
}

UnitaryOp UnitaryOp::make(CMatrix matrix, std::size_t target) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 2)
    throw ValidationError("unitary: matrix must be square with side >= 2");
  const CMatrix id = CMatrix::Identity(matrix.rows(), matrix.cols());
  if (max_abs_diff(matrix.adjoint() * matrix, id) > kValidationTol)
    throw ValidationError("unitary: U^dagger U differs from identity by more than 1e-10");
  return UnitaryOp{std::move(matrix), target};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims, std::span<const std::size_t> keep) {
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  std::vector<bool> is_kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw ValidationError("partial_trace: subsystem index out of range");
    is_kept[k] = true;
  }
  const IndexSplit sp = split_indices(dims, is_kept);
  CMatrix out = CMatrix::Zero(sp.kept_dim, sp.kept_dim);
  for (int r = 0; r < sp.kept_dim; ++r)
    for (int c = 0; c < sp.kept_dim; ++c) {
      cplx acc = 0.0;
      for (int t = 0; t < sp.traced_dim; ++t)
        acc += m(sp.full[static_cast<std::size_t>(r) * sp.traced_dim + t],
                 sp.full[static_cast<std::size_t>(c) * sp.traced_dim + t]);
      out(r, c) = acc;
    }
  return out;
}

QState partial_trace(const QState& s, std::span<const std::size_t> keep) {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  CMatrix reduced = partial_trace(s.matrix(), s.dims(), sorted);
  std::vector<int> dims;
  for (std::size_t k : sorted) dims.push_back(s.dims()[k]);
  return QState(std::move(dims), std::move(reduced));
}

CMatrix embed(const CMatrix& u, const std::vector<int>& dims, std::size_t target) {
  if (target >= dims.size()) throw ValidationError("unitary: target subsystem out of range");
  if (u.rows() != dims[target])
    throw ValidationError("unitary: matrix side does not match the target subsystem dimension");
  int left = 1, right = 1;
  for (std::size_t i = 0; i < target; ++i) left *= dims[i];
  for (std::size_t i = target + 1; i < dims.size(); ++i) right *= dims[i];
  return kron(kron(identity(left), u), identity(right));
}

QState apply_unitary(const QState& s, const UnitaryOp& u) {
  const CMatrix full = embed(u.matrix, s.dims(), u.target);
  CMatrix out = full * s.matrix() * full.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return QState(s.dims(), std::move(out));
}

CMatrix project_out(const CMatrix& m, const std::vector<int>& dims, std::size_t measured, const CVector& v) {
  if (measured >= dims.size()) throw ValidationError("measurement: subsystem index out of range");
  if (v.size() != dims[measured]) throw ValidationError("measurement: vector size does not match subsystem");
  std::vector<bool> is_kept(dims.size(), true);
  is_kept[measured] = false;
  const IndexSplit sp = split_indices(dims, is_kept);
  // traced_dim == dims[measured]; contract the measured digit with v.
  CMatrix out = CMatrix::Zero(sp.kept_dim, sp.kept_dim);
  const int dm = sp.traced_dim;
  for (int r = 0; r < sp.kept_dim; ++r)
    for (int c = 0; c < sp.kept_dim; ++c) {
      cplx acc = 0.0;
      for (int a = 0; a < dm; ++a)
        for (int b = 0; b < dm; ++b)
          acc += std::conj(v(a)) * m(sp.full[static_cast<std::size_t>(r) * dm + a],
                                     sp.full[static_cast<std::size_t>(c) * dm + b]) * v(b);
      out(r, c) = acc;
    }
  return out;
}

HermitianSpectrum hermitian_eig(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd clipped_eigenvalues(const CMatrix& m) {
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<CMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0.0 && ev(i) >= -kClipTol) ev(i) = 0.0;
  return ev;
}

CMatrix identity(int d) { return CMatrix::Identity(d, d); }

namespace pauli {
CMatrix I() { return identity(2); }
CMatrix X() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
CMatrix Y() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
CMatrix Z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

QState pure_state(std::vector<int> dims, const CVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw ValidationError("pure state: zero vector");
  const CVector u = psi / n;
  return QState(std::move(dims), u * u.adjoint());
}

QState bell_state() {
  CVector psi = CVector::Zero(4);
  psi(0) = 1.0;
  psi(3) = 1.0;
  return pure_state({2, 2}, psi);
}

QState classical_corr_state() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return QState({2, 2}, std::move(m));
}

QState werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("werner: p must lie in [0, 1]");
  CMatrix m = p * bell_state().matrix() + (1.0 - p) * identity(4) / 4.0;
  return QState({2, 2}, std::move(m));
}

QState product_state(const QState& a, const QState& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return QState(std::move(dims), kron(a.matrix(), b.matrix()));
}

QState custom_state(std::vector<int> dims, CMatrix m) { return QState(std::move(dims), std::move(m)); }

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace discordia
