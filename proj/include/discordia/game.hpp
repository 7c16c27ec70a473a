#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discordia/info.hpp"
#include "discordia/qmat.hpp"

namespace discordia {

/// Probability-weighted unitaries, all acting on one subsystem (the
/// "system of interest"). Encodes the random variable K.
class EncodingEnsemble {
 public:
  struct Entry {
    double p;
    UnitaryOp u;
  };

  explicit EncodingEnsemble(std::vector<Entry> entries);

  /// Uniform {I, X, Z, XZ} on a qubit target, i.e. U = XᵃZᵇ.
  static EncodingEnsemble pauli4(std::size_t target = 0);
  static EncodingEnsemble uniform(std::vector<CMatrix> unitaries, std::size_t target = 0);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t target() const { return entries_.front().u.target; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

struct Encoded {
  std::vector<EnsembleMember> codewords;
  QState average;
};

Encoded encode(const QState& s, const EncodingEnsemble& e);

/// Holevo quantity of the joint codewords: S̃(AB) − S(AB).
double iq(const QState& s, const EncodingEnsemble& e);
/// Holevo quantity of the target-marginal codewords: S̃(A) − S(A).
double i0(const QState& s, const EncodingEnsemble& e);

struct ClassicalMemory {
  double value = 0.0;
  MeasurementBasis basis;
};

/// Best Holevo quantity after the memory qubit is dephased in a rank-1
/// projective basis (classical storage), maximized over bases.
ClassicalMemory ic(const QState& s, const EncodingEnsemble& e, const BasisSearchOptions& opts = {});
/// Holevo quantity with the memory dephased in one fixed basis.
double ic_for_basis(const QState& s, const EncodingEnsemble& e, const MeasurementBasis& basis);

/// Slack applied to the bound-chain checks.
inline constexpr double kBoundSlack = 1e-2;

struct GameReport {
  double i0 = 0.0;
  double ic = 0.0;
  MeasurementBasis ic_basis;
  double iq = 0.0;
  double delta_q = 0.0;
  double mutual = 0.0;
  double j = 0.0;
  double j_tilde = 0.0;
  double discord_before = 0.0;
  double discord_after = 0.0;
  double mutual_tilde = 0.0;
  bool bounds_eq5_ok = false;
  bool bounds_eq6_ok = false;
  bool maximal = false;
  // Deviations from I0 = log2 dA − S(A), Ic = I0 + J, Iq = I0 + I(A,B);
  // populated only for maximal encodings.
  std::optional<double> dev_i0;
  std::optional<double> dev_ic;
  std::optional<double> dev_iq;
};

GameReport run_game(const QState& s, const EncodingEnsemble& e, const BasisSearchOptions& opts = {});

// Certification -------------------------------------------------------------

enum class Strategy { memoryless, classical, quantum_bell };

Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy s);

inline constexpr int kMinCertifyRounds = 1000;
inline constexpr int kCertifyBatches = 10;

struct TranscriptRow {
  int round;
  int k;
  int guess;
};

struct CertifyResult {
  double mi_estimate = 0.0;
  bool certified = false;
  double ic_threshold = 0.0;
  double margin = 0.0;
  double std_error = 0.0;
  std::vector<TranscriptRow> transcript;
};

/// Simulates the Pauli-4 guessing game for `rounds` rounds with Bob using
/// `strategy`, and estimates I(K; guess). Certifies entangling capability
/// when the estimate exceeds I_c plus three batch standard errors.
CertifyResult certify(const QState& s, Strategy strategy, int rounds, std::uint64_t seed);

/// Plug-in mutual information (bits) with the Miller–Madow correction on each
/// entropy term, clamped to [0, log2 min(nx, ny)].
double mi_miller_madow(std::span<const int> x, std::span<const int> y, int nx, int ny);

}  // namespace discordia
