#include "discordia/info.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "discordia/optimize.hpp"

namespace discordia {
namespace {

std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < n; ++i)
    if (i != skip) v.push_back(i);
  return v;
}

void require_measured(const QState& s, std::size_t measured) {
  if (s.parties() < 2) throw ValidationError("classical correlations need at least two subsystems");
  if (measured >= s.parties()) throw ValidationError("measured subsystem index out of range");
}

// Σ_b p_b S(ρ_rest|b) for a basis given as columns.
double conditional_entropy(const QState& s, std::size_t measured, const CMatrix& vectors) {
  double acc = 0.0;
  for (Eigen::Index b = 0; b < vectors.cols(); ++b) {
    const CMatrix cond = project_out(s.matrix(), s.dims(), measured, vectors.col(b));
    const double p = cond.trace().real();
    if (p <= kClipTol) continue;
    acc += p * entropy_bits(cond / p);
  }
  return acc;
}

ClassicalCorr optimize_qubit_basis(const QState& s, std::size_t measured, const BasisSearchOptions& opts) {
  const auto rest = all_but(s.parties(), measured);
  const double s_rest = entropy_bits(partial_trace(s.matrix(), s.dims(), rest));
  auto objective = [&](std::span<const double> x) {
    return s_rest - conditional_entropy(s, measured, MeasurementBasis::qubit(x[0], x[1]).vectors);
  };
  const auto thetas = linspace(0.0, std::numbers::pi, opts.theta_points);
  std::vector<double> phis(static_cast<std::size_t>(opts.phi_points));
  for (int j = 0; j < opts.phi_points; ++j) phis[j] = 2.0 * std::numbers::pi * j / opts.phi_points;

  NelderMeadOptions nm;
  nm.diameter_tol = opts.diameter_tol;
  const auto r = maximize_grid_refine(objective, thetas, phis, opts.refine_starts, nm);
  return ClassicalCorr{r.best.value, MeasurementBasis::qubit(r.best.x[0], r.best.x[1]), r.best_grid_value};
}

CorrelationReport to_report(const QState& s, ClassicalCorr j) {
  const double i = mutual_info(s, Bipartition{});
  double d = i - j.value;
  if (d < 0.0 && d >= -1e-6) d = 0.0;
  return CorrelationReport{i, j.value, d, std::move(j.basis)};
}

}  // namespace

MeasurementBasis MeasurementBasis::qubit(double theta, double phi) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const cplx e = std::polar(1.0, phi);
  CMatrix v(2, 2);
  v << c, s, e * s, -e * c;
  return MeasurementBasis{std::move(v), theta, phi};
}

MeasurementBasis MeasurementBasis::computational(int d) { return MeasurementBasis{identity(d), {}, {}}; }

MeasurementBasis MeasurementBasis::from_vectors(CMatrix vectors) {
  if (vectors.rows() != vectors.cols() || vectors.rows() < 2)
    throw ValidationError("basis: need d orthonormal vectors of length d");
  const Eigen::Index d = vectors.rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const CMatrix p = vectors.col(k) * vectors.col(k).adjoint();
    if (max_abs_diff(p * p, p) > kValidationTol || std::abs(p.trace() - cplx(1.0)) > kValidationTol)
      throw ValidationError("basis: projector is not idempotent rank 1");
    sum += p;
  }
  if (max_abs_diff(sum, identity(static_cast<int>(d))) > kValidationTol)
    throw ValidationError("basis: projectors do not sum to identity");
  return MeasurementBasis{std::move(vectors), {}, {}};
}

double entropy_bits(const CMatrix& m) {
  const Eigen::VectorXd ev = clipped_eigenvalues(m);
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > kClipTol) h -= ev(i) * std::log2(ev(i));
  return std::max(h, 0.0);
}

double vn_entropy(const QState& s) { return entropy_bits(s.matrix()); }

double mutual_info(const QState& s, const Bipartition& cut_in) {
  Bipartition cut = cut_in;
  if (cut.a.empty() && cut.b.empty()) {
    if (s.parties() != 2) throw ValidationError("mutual_info: default cut needs exactly two subsystems");
    cut = Bipartition{{0}, {1}};
  }
  if (cut.a.empty() || cut.b.empty()) throw ValidationError("mutual_info: both sides of the cut must be non-empty");
  std::vector<int> seen(s.parties(), 0);
  for (auto i : cut.a) {
    if (i >= s.parties()) throw ValidationError("mutual_info: subsystem index out of range");
    ++seen[i];
  }
  for (auto i : cut.b) {
    if (i >= s.parties()) throw ValidationError("mutual_info: subsystem index out of range");
    ++seen[i];
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw ValidationError("mutual_info: cut must cover every subsystem exactly once");
  const double sa = entropy_bits(partial_trace(s.matrix(), s.dims(), cut.a));
  const double sb = entropy_bits(partial_trace(s.matrix(), s.dims(), cut.b));
  return sa + sb - entropy_bits(s.matrix());
}

double mutual_info(const QState& s) { return mutual_info(s, Bipartition{}); }

double holevo(std::span<const EnsembleMember> ensemble) {
  if (ensemble.empty()) throw ValidationError("holevo: empty ensemble");
  const auto& dims = ensemble.front().state.dims();
  double total = 0.0, avg_entropy = 0.0;
  CMatrix avg = CMatrix::Zero(ensemble.front().state.dim(), ensemble.front().state.dim());
  for (const auto& m : ensemble) {
    if (m.state.dims() != dims) throw ValidationError("holevo: ensemble members have mismatched dims");
    if (m.p < 0.0) throw ValidationError("holevo: negative probability");
    total += m.p;
    avg += m.p * m.state.matrix();
    avg_entropy += m.p * vn_entropy(m.state);
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("holevo: probabilities do not sum to 1");
  return std::max(entropy_bits(avg) - avg_entropy, 0.0);
}

double classical_corr_for_basis(const QState& s, std::size_t measured, const MeasurementBasis& basis) {
  require_measured(s, measured);
  if (basis.vectors.rows() != s.dims()[measured])
    throw ValidationError("basis dimension does not match the measured subsystem");
  const auto rest = all_but(s.parties(), measured);
  return entropy_bits(partial_trace(s.matrix(), s.dims(), rest)) - conditional_entropy(s, measured, basis.vectors);
}

ClassicalCorr classical_corr(const QState& s, std::size_t measured, const BasisSearchOptions& opts) {
  require_measured(s, measured);
  if (s.dims()[measured] != 2)
    throw ValidationError("classical_corr: optimized path needs a qubit; supply candidate bases otherwise");
  return optimize_qubit_basis(s, measured, opts);
}

ClassicalCorr classical_corr(const QState& s, std::size_t measured, std::span<const MeasurementBasis> candidates) {
  require_measured(s, measured);
  if (candidates.empty()) throw ValidationError("classical_corr: empty candidate basis list");
  ClassicalCorr best{-1.0, candidates.front(), 0.0};
  for (const auto& b : candidates) {
    const double v = classical_corr_for_basis(s, measured, b);
    if (v > best.value) best = ClassicalCorr{v, b, v};
  }
  return best;
}

CorrelationReport discord(const QState& s, std::size_t measured, const BasisSearchOptions& opts) {
  if (s.parties() != 2) throw ValidationError("discord: state must be bipartite");
  return to_report(s, classical_corr(s, measured, opts));
}

CorrelationReport discord(const QState& s, std::size_t measured, std::span<const MeasurementBasis> candidates) {
  if (s.parties() != 2) throw ValidationError("discord: state must be bipartite");
  return to_report(s, classical_corr(s, measured, candidates));
}

}  // namespace discordia
