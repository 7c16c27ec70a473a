#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "discordia/errors.hpp"

namespace discordia {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance used when validating states and unitaries.
inline constexpr double kValidationTol = 1e-10;
/// Eigenvalues in [-kClipTol, 0] are treated as exact zeros.
inline constexpr double kClipTol = 1e-12;

/// Density matrix over an ordered list of subsystems. Subsystem 0 is the
/// leftmost tensor factor. Every constructed QState is Hermitian, has unit
/// trace and is positive semidefinite to within kValidationTol.
class QState {
 public:
  QState(std::vector<int> dims, CMatrix matrix);

  const std::vector<int>& dims() const { return dims_; }
  const CMatrix& matrix() const { return matrix_; }
  std::size_t parties() const { return dims_.size(); }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  std::vector<int> dims_;
  CMatrix matrix_;
};

/// Single-subsystem unitary. The target is the subsystem index it acts on.
struct UnitaryOp {
  CMatrix matrix;
  std::size_t target = 0;

  /// Throws ValidationError unless `matrix` is square and unitary.
  static UnitaryOp make(CMatrix matrix, std::size_t target);
};

/// Checks the three QState invariants; returns an empty string when valid,
/// otherwise a message naming the violated invariant.
std::string check_density(const std::vector<int>& dims, const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Reduced state on `keep` (ascending order of subsystems in the result).
QState partial_trace(const QState& s, std::span<const std::size_t> keep);
/// Raw-matrix variant used in inner loops; no validation of the output.
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      std::span<const std::size_t> keep);

/// I ⊗ ... ⊗ U ⊗ ... ⊗ I with U at position `target`.
CMatrix embed(const CMatrix& u, const std::vector<int>& dims, std::size_t target);

QState apply_unitary(const QState& s, const UnitaryOp& u);

/// Unnormalized post-measurement state of the remaining subsystems after
/// projecting subsystem `measured` onto |v>: (I ⊗ <v|) M (I ⊗ |v>).
CMatrix project_out(const CMatrix& m, const std::vector<int>& dims, std::size_t measured,
                    const CVector& v);

struct HermitianSpectrum {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;         // columns
};
HermitianSpectrum hermitian_eig(const CMatrix& m);

/// Ascending eigenvalues with values in [-kClipTol, 0) set to zero.
Eigen::VectorXd clipped_eigenvalues(const CMatrix& m);

namespace pauli {
CMatrix I();
CMatrix X();
CMatrix Y();
CMatrix Z();
}  // namespace pauli

CMatrix identity(int d);

// Canonical constructors.
QState bell_state();
/// ½(|00⟩⟨00| + |11⟩⟨11|).
QState classical_corr_state();
/// p·|Φ+⟩⟨Φ+| + (1 − p)·I/4, p ∈ [0, 1].
QState werner_state(double p);
QState product_state(const QState& a, const QState& b);
QState custom_state(std::vector<int> dims, CMatrix m);
/// Projector onto a normalized pure state.
QState pure_state(std::vector<int> dims, const CVector& psi);

/// Maximum absolute entry of a − b.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace discordia
