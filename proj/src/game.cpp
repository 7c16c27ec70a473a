#include "discordia/game.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "discordia/optimize.hpp"

namespace discordia {
namespace {

std::size_t memory_of(const QState& s, const EncodingEnsemble& e) {
  if (s.parties() != 2) throw ValidationError("game: state must have exactly two subsystems (system, memory)");
  if (e.target() >= 2) throw ValidationError("game: ensemble target out of range");
  return 1 - e.target();
}

void require_compatible(const QState& s, const EncodingEnsemble& e) {
  if (e.target() >= s.parties()) throw ValidationError("encode: ensemble target out of range");
  if (e.entries().front().u.matrix.rows() != s.dims()[e.target()])
    throw ValidationError("encode: unitary dimension does not match the target subsystem");
}

CMatrix dephase(const CMatrix& m, const std::vector<int>& dims, std::size_t memory, const CMatrix& basis) {
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index b = 0; b < basis.cols(); ++b) {
    const CMatrix p = embed(basis.col(b) * basis.col(b).adjoint(), dims, memory);
    out += p * m * p;
  }
  return out;
}

}  // namespace

EncodingEnsemble::EncodingEnsemble(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("ensemble: no entries");
  double total = 0.0;
  for (const auto& e : entries_) {
    if (e.p < 0.0) throw ValidationError("ensemble: negative probability");
    if (e.u.target != entries_.front().u.target) throw ValidationError("ensemble: unitaries act on different subsystems");
    if (e.u.matrix.rows() != entries_.front().u.matrix.rows())
      throw ValidationError("ensemble: unitaries have different dimensions");
    total += e.p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("ensemble: probabilities do not sum to 1");
}

EncodingEnsemble EncodingEnsemble::pauli4(std::size_t target) {
  return uniform({pauli::I(), pauli::X(), pauli::Z(), pauli::X() * pauli::Z()}, target);
}

EncodingEnsemble EncodingEnsemble::uniform(std::vector<CMatrix> unitaries, std::size_t target) {
  std::vector<Entry> entries;
  const double p = 1.0 / static_cast<double>(unitaries.size());
  for (auto& u : unitaries) entries.push_back({p, UnitaryOp::make(std::move(u), target)});
  return EncodingEnsemble(std::move(entries));
}

Encoded encode(const QState& s, const EncodingEnsemble& e) {
  require_compatible(s, e);
  std::vector<EnsembleMember> codewords;
  CMatrix avg = CMatrix::Zero(s.dim(), s.dim());
  for (const auto& entry : e.entries()) {
    QState cw = apply_unitary(s, entry.u);
    avg += entry.p * cw.matrix();
    codewords.push_back({entry.p, std::move(cw)});
  }
  avg = 0.5 * (avg + avg.adjoint()).eval();
  return Encoded{std::move(codewords), QState(s.dims(), std::move(avg))};
}

double iq(const QState& s, const EncodingEnsemble& e) { return holevo(encode(s, e).codewords); }

double i0(const QState& s, const EncodingEnsemble& e) {
  const Encoded enc = encode(s, e);
  const std::size_t keep[] = {e.target()};
  std::vector<EnsembleMember> marginals;
  for (const auto& cw : enc.codewords) marginals.push_back({cw.p, partial_trace(cw.state, keep)});
  return holevo(marginals);
}

double ic_for_basis(const QState& s, const EncodingEnsemble& e, const MeasurementBasis& basis) {
  const std::size_t memory = memory_of(s, e);
  require_compatible(s, e);
  if (basis.vectors.rows() != s.dims()[memory]) throw ValidationError("ic: basis does not match memory dimension");
  // Storage measurement first, then encoding; the two commute.
  const CMatrix stored = dephase(s.matrix(), s.dims(), memory, basis.vectors);
  CMatrix avg = CMatrix::Zero(s.dim(), s.dim());
  for (const auto& entry : e.entries()) {
    const CMatrix u = embed(entry.u.matrix, s.dims(), entry.u.target);
    avg += entry.p * (u * stored * u.adjoint());
  }
  // Unitary conjugation preserves the codeword entropy.
  return std::max(entropy_bits(avg) - entropy_bits(stored), 0.0);
}

ClassicalMemory ic(const QState& s, const EncodingEnsemble& e, const BasisSearchOptions& opts) {
  const std::size_t memory = memory_of(s, e);
  require_compatible(s, e);
  if (s.dims()[memory] != 2) throw ValidationError("ic: optimized path needs a qubit memory");

  auto objective = [&](std::span<const double> x) { return ic_for_basis(s, e, MeasurementBasis::qubit(x[0], x[1])); };
  const auto thetas = linspace(0.0, std::numbers::pi, opts.theta_points);
  std::vector<double> phis(static_cast<std::size_t>(opts.phi_points));
  for (int j = 0; j < opts.phi_points; ++j) phis[j] = 2.0 * std::numbers::pi * j / opts.phi_points;
  NelderMeadOptions nm;
  nm.diameter_tol = opts.diameter_tol;
  const auto r = maximize_grid_refine(objective, thetas, phis, opts.refine_starts, nm);
  return ClassicalMemory{r.best.value, MeasurementBasis::qubit(r.best.x[0], r.best.x[1])};
}

GameReport run_game(const QState& s, const EncodingEnsemble& e, const BasisSearchOptions& opts) {
  const std::size_t memory = memory_of(s, e);
  const std::size_t target = e.target();
  const Encoded enc = encode(s, e);

  GameReport r;
  r.iq = holevo(enc.codewords);
  r.i0 = i0(s, e);
  auto icm = ic(s, e, opts);
  r.ic = icm.value;
  r.ic_basis = std::move(icm.basis);
  r.delta_q = r.iq - r.i0;

  const auto before = discord(s, memory, opts);
  const auto after = discord(enc.average, memory, opts);
  r.mutual = before.mutual_info;
  r.j = before.classical_corr;
  r.discord_before = before.discord;
  r.mutual_tilde = after.mutual_info;
  r.j_tilde = after.classical_corr;
  r.discord_after = after.discord;

  const double eps = kBoundSlack;
  const double gain_c = r.ic - r.i0;
  r.bounds_eq5_ok = (r.j - r.j_tilde - eps <= gain_c) && (gain_c <= r.j + eps);
  const double d_delta = r.discord_before - r.discord_after;
  const double gap_q = r.iq - r.ic;
  r.bounds_eq6_ok = (d_delta - r.mutual_tilde - eps <= gap_q) && (gap_q <= d_delta + eps);

  const std::size_t keep[] = {target};
  const int da = s.dims()[target];
  const CMatrix avg_a = partial_trace(enc.average.matrix(), enc.average.dims(), keep);
  r.maximal = max_abs_diff(avg_a, identity(da) / static_cast<double>(da)) <= 1e-9;
  if (r.maximal) {
    const double s_a = entropy_bits(partial_trace(s.matrix(), s.dims(), keep));
    r.dev_i0 = r.i0 - (std::log2(static_cast<double>(da)) - s_a);
    r.dev_ic = r.ic - (r.i0 + r.j);
    r.dev_iq = r.iq - (r.i0 + r.mutual);
  }
  return r;
}

}  // namespace discordia
