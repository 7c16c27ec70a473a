#pragma once

#include <optional>
#include <span>
#include <vector>

#include "discordia/qmat.hpp"

namespace discordia {

/// Rank-1 orthonormal projective measurement, stored as the columns of a
/// unitary. Qubit bases also carry the Bloch angles they were built from.
struct MeasurementBasis {
  CMatrix vectors;
  std::optional<double> theta;
  std::optional<double> phi;

  int size() const { return static_cast<int>(vectors.cols()); }
  CMatrix projector(int k) const { return vectors.col(k) * vectors.col(k).adjoint(); }

  /// {|n+⟩, |n−⟩} for the Bloch direction n(θ, φ).
  static MeasurementBasis qubit(double theta, double phi);
  static MeasurementBasis computational(int d);
  /// Throws ValidationError unless projectors sum to identity and are
  /// idempotent rank 1 (within 1e−10).
  static MeasurementBasis from_vectors(CMatrix vectors);
};

struct Bipartition {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
};

struct EnsembleMember {
  double p;
  QState state;
};

struct CorrelationReport {
  double mutual_info = 0.0;
  double classical_corr = 0.0;
  double discord = 0.0;
  MeasurementBasis argmax_basis;
};

struct ClassicalCorr {
  double value = 0.0;
  MeasurementBasis basis;
  double best_grid_value = 0.0;
};

/// Grid and refinement settings for the qubit basis search.
struct BasisSearchOptions {
  int theta_points = 30;
  int phi_points = 30;
  int refine_starts = 3;
  double diameter_tol = 1e-6;
};

double entropy_bits(const CMatrix& m);
double vn_entropy(const QState& s);

/// S(A) + S(B) − S(AB); the cut must cover every subsystem exactly once.
double mutual_info(const QState& s, const Bipartition& cut);
/// Two-party shorthand: cut {0} | {1}.
double mutual_info(const QState& s);

/// S(Σ p_k ρ_k) − Σ p_k S(ρ_k).
double holevo(std::span<const EnsembleMember> ensemble);

/// S(rest) − Σ_b p_b S(ρ_rest|b) for one fixed basis on `measured`.
double classical_corr_for_basis(const QState& s, std::size_t measured, const MeasurementBasis& basis);

/// J(rest|measured) maximized over rank-1 projective bases on a qubit.
ClassicalCorr classical_corr(const QState& s, std::size_t measured, const BasisSearchOptions& opts = {});
/// J maximized over a caller-supplied list of bases (any dimension).
ClassicalCorr classical_corr(const QState& s, std::size_t measured, std::span<const MeasurementBasis> candidates);

/// δ(rest|measured) = I − J, clipped to 0 when in [−1e−6, 0).
CorrelationReport discord(const QState& s, std::size_t measured, const BasisSearchOptions& opts = {});
CorrelationReport discord(const QState& s, std::size_t measured, std::span<const MeasurementBasis> candidates);

}  // namespace discordia
