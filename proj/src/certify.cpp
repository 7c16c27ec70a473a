#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "discordia/game.hpp"
#include "discordia/optimize.hpp"
#include "discordia/random.hpp"

namespace discordia {
namespace {

constexpr int kSymbols = 4;  // K = (a, b) for U = XᵃZᵇ

// p(outcome | k) for each k; rows indexed by k.
using OutcomeModel = std::vector<std::vector<double>>;

double shannon_bits(std::span<const double> p) {
  double h = 0.0;
  for (double x : p)
    if (x > 1e-300) h -= x * std::log2(x);
  return h;
}

// I(K; X) under a uniform prior on K.
double classical_mi(const OutcomeModel& model) {
  const std::size_t n_out = model.front().size();
  std::vector<double> marginal(n_out, 0.0);
  double cond = 0.0;
  for (const auto& row : model) {
    for (std::size_t o = 0; o < n_out; ++o) marginal[o] += row[o] / model.size();
    cond += shannon_bits(row) / model.size();
  }
  return shannon_bits(marginal) - cond;
}

OutcomeModel measure_model(const std::vector<CMatrix>& states, const CMatrix& basis, double weight = 1.0) {
  OutcomeModel model;
  for (const auto& rho : states) {
    std::vector<double> row;
    for (Eigen::Index x = 0; x < basis.cols(); ++x)
      row.push_back(weight * std::max((basis.col(x).adjoint() * rho * basis.col(x))(0, 0).real(), 0.0));
    model.push_back(std::move(row));
  }
  return model;
}

struct BasisChoice {
  CMatrix vectors;
  double mi;
};

// Qubit basis maximizing I(K; X) for the given codeword states.
BasisChoice best_qubit_basis(const std::vector<CMatrix>& states, int grid = 30) {
  auto objective = [&](std::span<const double> x) {
    return classical_mi(measure_model(states, MeasurementBasis::qubit(x[0], x[1]).vectors));
  };
  const auto thetas = linspace(0.0, std::numbers::pi, grid);
  std::vector<double> phis(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) phis[j] = 2.0 * std::numbers::pi * j / grid;
  const auto r = maximize_grid_refine(objective, thetas, phis, 3);
  return {MeasurementBasis::qubit(r.best.x[0], r.best.x[1]).vectors, r.best.value};
}

std::vector<CMatrix> conjugate_all(const CMatrix& rho, const EncodingEnsemble& e, const std::vector<int>& dims) {
  std::vector<CMatrix> out;
  for (const auto& entry : e.entries()) {
    const CMatrix u = dims.size() == 1 ? entry.u.matrix : embed(entry.u.matrix, dims, entry.u.target);
    out.push_back(u * rho * u.adjoint());
  }
  return out;
}

OutcomeModel memoryless_model(const QState& s, const EncodingEnsemble& e) {
  const std::size_t keep[] = {0};
  const auto codewords = conjugate_all(partial_trace(s.matrix(), s.dims(), keep), e, {2});
  return measure_model(codewords, best_qubit_basis(codewords).vectors);
}

// Conditional A states after storing B in `storage`, with their probabilities.
std::vector<std::pair<double, CMatrix>> stored_branches(const QState& s, const CMatrix& storage) {
  std::vector<std::pair<double, CMatrix>> out;
  for (Eigen::Index b = 0; b < storage.cols(); ++b) {
    const CMatrix cond = project_out(s.matrix(), s.dims(), 1, storage.col(b));
    out.emplace_back(cond.trace().real(), cond);
  }
  return out;
}

// Single-round information of the classical strategy for one storage basis:
// Σ_b p_b I(K; X | b), since the stored outcome b is independent of K.
double classical_strategy_mi(const QState& s, const EncodingEnsemble& e, const CMatrix& storage, int grid) {
  double mi = 0.0;
  for (const auto& [pb, cond] : stored_branches(s, storage))
    if (pb > kClipTol) mi += pb * best_qubit_basis(conjugate_all(cond / pb, e, {2}), grid).mi;
  return mi;
}

// The storage basis maximizes the strategy's single-round information. The
// I_c-optimal basis is a candidate, but it can be degenerate (for a Bell pair
// every basis reaches I_c), and only some of the degenerate choices let a
// single measurement of A read the stored correlation out.
CMatrix classical_storage_basis(const QState& s, const EncodingEnsemble& e, const MeasurementBasis& ic_basis) {
  constexpr int kOuterGrid = 12, kInnerGrid = 12;
  auto objective = [&](std::span<const double> x) {
    return classical_strategy_mi(s, e, MeasurementBasis::qubit(x[0], x[1]).vectors, kInnerGrid);
  };
  const auto thetas = linspace(0.0, std::numbers::pi, kOuterGrid);
  std::vector<double> phis(kOuterGrid);
  for (int j = 0; j < kOuterGrid; ++j) phis[j] = 2.0 * std::numbers::pi * j / kOuterGrid;
  const auto r = maximize_grid_refine(objective, thetas, phis, 3);
  CMatrix best = MeasurementBasis::qubit(r.best.x[0], r.best.x[1]).vectors;
  if (classical_strategy_mi(s, e, ic_basis.vectors, kInnerGrid) > r.best.value) best = ic_basis.vectors;
  return best;
}

OutcomeModel classical_model(const QState& s, const EncodingEnsemble& e, const MeasurementBasis& ic_basis) {
  const CMatrix storage = classical_storage_basis(s, e, ic_basis);
  OutcomeModel model(kSymbols);
  for (const auto& [pb, cond] : stored_branches(s, storage)) {
    CMatrix basis = identity(2);
    if (pb > kClipTol) basis = best_qubit_basis(conjugate_all(cond / pb, e, {2})).vectors;
    const OutcomeModel part = measure_model(conjugate_all(cond, e, {2}), basis);
    for (int k = 0; k < kSymbols; ++k) model[k].insert(model[k].end(), part[k].begin(), part[k].end());
  }
  return model;
}

OutcomeModel bell_model(const QState& s, const EncodingEnsemble& e) {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix bell = CMatrix::Zero(4, 4);
  bell(0, 0) = r; bell(3, 0) = r;   // Φ+
  bell(0, 1) = r; bell(3, 1) = -r;  // Φ−
  bell(1, 2) = r; bell(2, 2) = r;   // Ψ+
  bell(1, 3) = r; bell(2, 3) = -r;  // Ψ−
  return measure_model(conjugate_all(s.matrix(), e, s.dims()), bell);
}

int sample_index(std::span<const double> cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

}  // namespace

Strategy parse_strategy(const std::string& name) {
  if (name == "memoryless") return Strategy::memoryless;
  if (name == "classical") return Strategy::classical;
  if (name == "quantum_bell") return Strategy::quantum_bell;
  throw ValidationError("strategy: expected memoryless, classical or quantum_bell, got '" + name + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::memoryless: return "memoryless";
    case Strategy::classical: return "classical";
    case Strategy::quantum_bell: return "quantum_bell";
  }
  return "unknown";
}

CertifyResult certify(const QState& s, Strategy strategy, int rounds, std::uint64_t seed) {
  if (s.dims() != std::vector<int>{2, 2}) throw ValidationError("certify: state must be two-qubit");
  if (rounds < kMinCertifyRounds) throw ValidationError("certify: rounds must be at least 1000");

  const EncodingEnsemble e = EncodingEnsemble::pauli4(0);
  const ClassicalMemory threshold = ic(s, e);

  OutcomeModel model;
  switch (strategy) {
    case Strategy::memoryless: model = memoryless_model(s, e); break;
    case Strategy::classical: model = classical_model(s, e, threshold.basis); break;
    case Strategy::quantum_bell: model = bell_model(s, e); break;
  }

  const std::size_t n_out = model.front().size();
  std::vector<std::vector<double>> cdf(kSymbols);
  for (int k = 0; k < kSymbols; ++k) {
    std::partial_sum(model[k].begin(), model[k].end(), std::back_inserter(cdf[k]));
    const double total = cdf[k].back();
    for (auto& c : cdf[k]) c /= total;
  }
  // Maximum-likelihood guess per outcome; ties go to the smallest k.
  std::vector<int> guess(n_out, 0);
  for (std::size_t o = 0; o < n_out; ++o)
    for (int k = 1; k < kSymbols; ++k)
      if (model[k][o] > model[guess[o]][o] + 1e-12) guess[o] = k;

  Rng rng(seed);
  CertifyResult out;
  out.transcript.reserve(rounds);
  std::vector<int> ks(rounds), gs(rounds);
  for (int r = 0; r < rounds; ++r) {
    const int k = std::min(static_cast<int>(uniform01(rng) * kSymbols), kSymbols - 1);
    const int o = sample_index(cdf[k], uniform01(rng));
    ks[r] = k;
    gs[r] = guess[o];
    out.transcript.push_back({r, k, gs[r]});
  }

  out.mi_estimate = mi_miller_madow(ks, gs, kSymbols, kSymbols);

  std::vector<double> batch;
  const int per = rounds / kCertifyBatches;
  for (int b = 0; b < kCertifyBatches; ++b) {
    const int lo = b * per, hi = b + 1 == kCertifyBatches ? rounds : lo + per;
    batch.push_back(mi_miller_madow(std::span<const int>(ks).subspan(lo, hi - lo),
                                    std::span<const int>(gs).subspan(lo, hi - lo), kSymbols, kSymbols));
  }
  const double mean = std::accumulate(batch.begin(), batch.end(), 0.0) / batch.size();
  double var = 0.0;
  for (double v : batch) var += (v - mean) * (v - mean);
  var /= static_cast<double>(batch.size() - 1);
  out.std_error = std::sqrt(var / static_cast<double>(batch.size()));
  out.margin = 3.0 * out.std_error;
  out.ic_threshold = threshold.value;
  out.certified = out.mi_estimate > out.ic_threshold + out.margin;
  return out;
}

}  // namespace discordia
