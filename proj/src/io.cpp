#include "discordia/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace discordia::io {
namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ValidationError(std::string("schema: missing field '") + name + "'");
  return j.at(name);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError("schema: field '" + where + "' must be numeric");
  return j.get<double>();
}

Eigen::MatrixXd real_matrix(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) throw ValidationError("schema: field '" + name + "' must be a non-empty 2-D array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Eigen::MatrixXd m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array()) throw ValidationError("schema: field '" + name + "' must be a 2-D array");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    }
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw ValidationError("schema: field '" + name + "' has ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = number(row[c], name);
  }
  return m;
}

CMatrix complex_matrix(const json& j) {
  const Eigen::MatrixXd re = real_matrix(field(j, "re"), "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
  if (j.contains("im")) im = real_matrix(j.at("im"), "im");
  if (im.rows() != re.rows() || im.cols() != re.cols())
    throw ValidationError("schema: fields 're' and 'im' differ in shape");
  CMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

json real_rows(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

void put_complex(json& j, const CMatrix& m) {
  j["re"] = real_rows(m.real());
  j["im"] = real_rows(m.imag());
}

}  // namespace

json to_json(const QState& s) {
  json j;
  j["dims"] = s.dims();
  put_complex(j, s.matrix());
  return j;
}

QState qstate_from_json(const json& j) {
  const json& d = field(j, "dims");
  if (!d.is_array() || d.empty()) throw ValidationError("schema: field 'dims' must be a non-empty array");
  std::vector<int> dims;
  for (const auto& x : d) {
    if (!x.is_number_integer()) throw ValidationError("schema: field 'dims' must hold integers");
    dims.push_back(x.get<int>());
  }
  for (int x : dims)
    if (x < 2) throw ValidationError("schema: field 'dims' entries must be >= 2");
  CMatrix m = complex_matrix(j);
  if (auto err = check_density(dims, m); !err.empty()) throw ValidationError("state invariant violated: " + err);
  return QState(std::move(dims), std::move(m));
}

json to_json(const GaussianState& s) {
  json j;
  j["modes"] = s.modes();
  j["mean"] = std::vector<double>(s.mean().data(), s.mean().data() + s.mean().size());
  j["cov"] = real_rows(s.cov());
  return j;
}

GaussianState gaussian_from_json(const json& j) {
  const json& m = field(j, "modes");
  if (!m.is_number_integer() || m.get<int>() < 1) throw ValidationError("schema: field 'modes' must be a positive integer");
  const int modes = m.get<int>();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2 * modes);
  if (j.contains("mean")) {
    const json& mj = j.at("mean");
    if (!mj.is_array() || static_cast<int>(mj.size()) != 2 * modes)
      throw ValidationError("schema: field 'mean' must have length 2*modes");
    for (int i = 0; i < 2 * modes; ++i) mean(i) = number(mj[i], "mean");
  }
  Eigen::MatrixXd cov = real_matrix(field(j, "cov"), "cov");
  if (auto err = check_covariance(modes, cov); !err.empty()) throw ValidationError(err);
  return GaussianState(modes, std::move(mean), std::move(cov));
}

json to_json(const EncodingEnsemble& e) {
  json j;
  j["target"] = e.target();
  j["entries"] = json::array();
  for (const auto& entry : e.entries()) {
    json item;
    item["p"] = entry.p;
    put_complex(item, entry.u.matrix);
    j["entries"].push_back(std::move(item));
  }
  return j;
}

EncodingEnsemble ensemble_from_json(const json& j) {
  const json& t = field(j, "target");
  if (!t.is_number_integer() || t.get<int>() < 0) throw ValidationError("schema: field 'target' must be a non-negative integer");
  const auto target = t.get<std::size_t>();
  const json& entries = field(j, "entries");
  if (!entries.is_array() || entries.empty()) throw ValidationError("schema: field 'entries' must be a non-empty array");
  std::vector<EncodingEnsemble::Entry> out;
  for (const auto& e : entries) out.push_back({number(field(e, "p"), "p"), UnitaryOp::make(complex_matrix(e), target)});
  return EncodingEnsemble(std::move(out));
}

json to_json(const MeasurementBasis& b) {
  json j;
  if (b.theta) j["theta"] = *b.theta;
  if (b.phi) j["phi"] = *b.phi;
  put_complex(j, b.vectors);
  return j;
}

json to_json(const CorrelationReport& r) {
  return json{{"mutual_info", r.mutual_info},
              {"classical_corr", r.classical_corr},
              {"discord", r.discord},
              {"argmax_basis", to_json(r.argmax_basis)}};
}

json to_json(const GameReport& r) {
  json j{{"i0", r.i0},
         {"ic", r.ic},
         {"ic_basis", to_json(r.ic_basis)},
         {"iq", r.iq},
         {"delta_q", r.delta_q},
         {"mutual", r.mutual},
         {"j", r.j},
         {"j_tilde", r.j_tilde},
         {"discord_before", r.discord_before},
         {"discord_after", r.discord_after},
         {"mutual_tilde", r.mutual_tilde},
         {"bounds_eq5_ok", r.bounds_eq5_ok},
         {"bounds_eq6_ok", r.bounds_eq6_ok},
         {"maximal", r.maximal}};
  if (r.maximal) {
    j["identity_deviation"] = {{"i0", *r.dev_i0}, {"ic", *r.dev_ic}, {"iq", *r.dev_iq}};
  }
  return j;
}

json to_json(const RateReport& r) {
  return json{{"eta", r.eta},
              {"mu", r.mu},
              {"coherent_info", r.coherent_info},
              {"reverse_coherent_info", r.reverse_coherent_info},
              {"ed_lower", r.ed_lower},
              {"discord_ab", r.discord_ab},
              {"discord_ba", r.discord_ba},
              {"rate_upper_discord", r.rate_upper_discord},
              {"r_reverse", r.r_reverse},
              {"ppt_be", r.ppt_be},
              {"ef_be_separable", r.ef_be_separable},
              {"plob", r.plob}};
}

json to_json(const GaussianDiscord& d) {
  return json{{"discord", d.value}, {"mutual_info", d.mutual_info}, {"lambda", d.lambda}, {"theta", d.theta}};
}

AnyState state_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("schema: state file must hold a JSON object");
  const bool has_dims = j.contains("dims"), has_modes = j.contains("modes");
  if (has_dims == has_modes) throw ValidationError("schema: state needs exactly one of 'dims' or 'modes'");
  if (has_dims) return qstate_from_json(j);
  return gaussian_from_json(j);
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

AnyState load_state(const std::filesystem::path& path) { return state_from_json(read_json(path)); }

EncodingEnsemble load_ensemble(const std::filesystem::path& path) { return ensemble_from_json(read_json(path)); }

std::string csv_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_number(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string rate_reports_long_csv(const std::vector<RateReport>& reports) {
  std::ostringstream os;
  os << "mu,eta,quantity,value\n";
  for (const auto& r : reports) {
    const std::pair<const char*, double> q[] = {{"coherent_info", r.coherent_info},
                                                {"reverse_coherent_info", r.reverse_coherent_info},
                                                {"discord_ab", r.discord_ab},
                                                {"discord_ba", r.discord_ba},
                                                {"ppt_be", r.ppt_be},
                                                {"plob", r.plob}};
    for (const auto& [name, v] : q)
      os << csv_number(r.mu) << ',' << csv_number(r.eta) << ',' << name << ',' << csv_number(v) << '\n';
  }
  return os.str();
}

std::string transcript_csv(const std::vector<TranscriptRow>& rows) {
  std::ostringstream os;
  os << "round,k,guess\n";
  for (const auto& r : rows) os << r.round << ',' << r.k << ',' << r.guess << '\n';
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open output file '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ValidationError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ValidationError("cannot move output into place at '" + path.string() + "': " + ec.message());
  }
}

}  // namespace discordia::io
