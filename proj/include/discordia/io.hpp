#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "discordia/game.hpp"
#include "discordia/gaussian.hpp"
#include "discordia/keyrates.hpp"
#include "discordia/qmat.hpp"

namespace discordia::io {

using json = nlohmann::json;
using AnyState = std::variant<QState, GaussianState>;

// QState: {"dims": [...], "re": [[...]], "im": [[...]]}
json to_json(const QState& s);
QState qstate_from_json(const json& j);

// GaussianState: {"modes": m, "mean": [...], "cov": [[...]]}
json to_json(const GaussianState& s);
GaussianState gaussian_from_json(const json& j);

// Ensemble: {"target": 0, "entries": [{"p": 0.25, "re": [[...]], "im": [[...]]}, ...]}
json to_json(const EncodingEnsemble& e);
EncodingEnsemble ensemble_from_json(const json& j);

json to_json(const MeasurementBasis& b);
json to_json(const CorrelationReport& r);
json to_json(const GameReport& r);
json to_json(const RateReport& r);
json to_json(const GaussianDiscord& d);

/// Dispatches on the "dims" vs "modes" key.
AnyState state_from_json(const json& j);
AnyState load_state(const std::filesystem::path& path);
EncodingEnsemble load_ensemble(const std::filesystem::path& path);
json read_json(const std::filesystem::path& path);

/// '.' decimal, 6 significant digits.
std::string csv_number(double v);

/// One CSV document: header line plus rows, LF line endings.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Long-format Gaussian sweep CSV with header "mu,eta,quantity,value".
std::string rate_reports_long_csv(const std::vector<RateReport>& reports);

/// Transcript CSV with header "round,k,guess".
std::string transcript_csv(const std::vector<TranscriptRow>& rows);

/// Writes through a temporary sibling file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace discordia::io
