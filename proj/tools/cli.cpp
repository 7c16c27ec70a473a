#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "discordia/game.hpp"
#include "discordia/gaussian.hpp"
#include "discordia/info.hpp"
#include "discordia/io.hpp"
#include "discordia/keyrates.hpp"

namespace discordia::cli {
namespace {

const char* kUsage =
    "usage: discordia <subcommand> [options]\n"
    "\n"
    "subcommands:\n"
    "  discord     --state FILE --measure INDEX            discord / classical correlations of a state\n"
    "  game        --state FILE [--ensemble FILE]          channel-guessing game report (default Pauli-4 on subsystem 0)\n"
    "  certify     --state FILE --strategy S --rounds N --seed K [--transcript FILE]\n"
    "  cv-rate     --eta LIST --mu LIST [--format json|csv] [--layout wide|long]\n"
    "  plob-sweep  --eta LIST [--format csv|json]\n"
    "\n"
    "LIST is lo:hi:step (inclusive) or comma separated. Every subcommand accepts --out FILE.\n";

struct Emitter {
  std::string out_path;
  std::ostream& stream;

  void emit(const std::string& content) const {
    if (out_path.empty()) stream << content;
    else io::write_atomic(out_path, content);
  }
};

std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

int cmd_discord(const std::string& state_path, int measure, const Emitter& em) {
  const auto st = io::load_state(state_path);
  if (const auto* q = std::get_if<QState>(&st)) {
    if (measure < 0 || static_cast<std::size_t>(measure) >= q->parties())
      throw ValidationError("--measure: subsystem index out of range");
    auto j = io::to_json(discord(*q, static_cast<std::size_t>(measure)));
    j["kind"] = "finite";
    j["measured"] = measure;
    em.emit(dump(j));
  } else {
    const auto& g = std::get<GaussianState>(st);
    auto j = io::to_json(gaussian_discord(g, measure));
    j["kind"] = "gaussian";
    j["measured"] = measure;
    em.emit(dump(j));
  }
  return kExitOk;
}

QState load_qstate(const std::string& path) {
  auto st = io::load_state(path);
  if (auto* q = std::get_if<QState>(&st)) return std::move(*q);
  throw ValidationError("--state: expected a finite-dimensional state ('dims'), got a Gaussian state");
}

int cmd_game(const std::string& state_path, const std::string& ensemble_path, const Emitter& em) {
  const QState s = load_qstate(state_path);
  const EncodingEnsemble e = ensemble_path.empty() ? EncodingEnsemble::pauli4(0) : io::load_ensemble(ensemble_path);
  em.emit(dump(io::to_json(run_game(s, e))));
  return kExitOk;
}

int cmd_certify(const std::string& state_path, const std::string& strategy, int rounds, std::uint64_t seed,
                const std::string& transcript_path, const Emitter& em) {
  const QState s = load_qstate(state_path);
  const Strategy st = parse_strategy(strategy);
  const CertifyResult r = certify(s, st, rounds, seed);
  if (!transcript_path.empty()) io::write_atomic(transcript_path, io::transcript_csv(r.transcript));
  io::json j{{"strategy", to_string(st)},
             {"rounds", rounds},
             {"seed", seed},
             {"mi_estimate", r.mi_estimate},
             {"ic", r.ic_threshold},
             {"std_error", r.std_error},
             {"margin", r.margin},
             {"certified", r.certified}};
  em.emit(dump(j));
  return kExitOk;
}

int cmd_cv_rate(const std::string& eta_list, const std::string& mu_list, const std::string& format,
                const std::string& layout, const Emitter& em) {
  const auto etas = parse_list(eta_list);
  const auto mus = parse_list(mu_list);
  if (format == "csv" && layout == "wide") {
    std::vector<std::vector<double>> rows;
    for (const auto& r : cv_sweep(etas, mus)) rows.push_back({r.eta, r.mu, r.rci, r.discord_ba, r.plob, r.gap});
    em.emit(io::csv({"eta", "mu", "rci", "discord_ba", "plob", "gap"}, rows));
    return kExitOk;
  }
  std::vector<RateReport> reports;
  for (double eta : etas)
    for (double mu : mus) reports.push_back(lossy_rr_rate(eta, mu));
  if (format == "csv") {
    em.emit(io::rate_reports_long_csv(reports));
  } else if (reports.size() == 1) {
    em.emit(dump(io::to_json(reports.front())));
  } else {
    io::json arr = io::json::array();
    for (const auto& r : reports) arr.push_back(io::to_json(r));
    em.emit(dump(arr));
  }
  return kExitOk;
}

int cmd_plob_sweep(const std::string& eta_list, const std::string& format, const Emitter& em) {
  const auto etas = parse_list(eta_list);
  std::vector<std::vector<double>> rows;
  for (double eta : etas) {
    const PlobValue p = plob(eta);
    rows.push_back({eta, p.value, p.linearization});
  }
  if (format == "json") {
    io::json arr = io::json::array();
    for (const auto& r : rows) arr.push_back({{"eta", r[0]}, {"plob", r[1]}, {"linearization", r[2]}});
    em.emit(dump(arr));
  } else {
    em.emit(io::csv({"eta", "plob", "linearization"}, rows));
  }
  return kExitOk;
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  auto to_d = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("list: cannot parse number '" + s + "' in '" + text + "'");
    }
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ValidationError("list: range must be lo:hi:step");
    const double lo = to_d(parts[0]), hi = to_d(parts[1]), step = to_d(parts[2]);
    if (!(step > 0.0) || hi < lo) throw ValidationError("list: range needs step > 0 and hi >= lo");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (n > 100000) throw ValidationError("list: range has too many points");
    for (long i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');)
      if (!p.empty()) out.push_back(to_d(p));
  }
  if (out.empty()) throw ValidationError("list: no values in '" + text + "'");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> known = {"discord", "game", "certify", "cv-rate", "plob-sweep"};
  if (args.empty()) {
    err << kUsage;
    return kExitUsage;
  }
  if (args[0] == "-h" || args[0] == "--help") {
    out << kUsage;
    return kExitOk;
  }
  if (std::find(known.begin(), known.end(), args[0]) == known.end()) {
    err << "unknown subcommand '" << args[0] << "'\n" << kUsage;
    return kExitUsage;
  }

  CLI::App app{"Quantum correlations, guessing games and lossy-channel key rates", "discordia"};
  app.require_subcommand(1);
  std::string out_path;

  std::string state_path, ensemble_path, strategy, transcript_path, eta_list, mu_list;
  std::string format = "json", layout = "wide", sweep_format = "csv";
  int measure = 1, rounds = 10000;
  std::uint64_t seed = 0;

  auto* discord_cmd = app.add_subcommand("discord", "discord and classical correlations");
  discord_cmd->add_option("--state", state_path, "state JSON")->required();
  discord_cmd->add_option("--measure", measure, "measured subsystem or mode index")->required();
  discord_cmd->add_option("--out", out_path, "output file");

  auto* game_cmd = app.add_subcommand("game", "channel-guessing game report");
  game_cmd->add_option("--state", state_path, "state JSON")->required();
  game_cmd->add_option("--ensemble", ensemble_path, "ensemble JSON (default: Pauli-4 on subsystem 0)");
  game_cmd->add_option("--out", out_path, "output file");

  auto* certify_cmd = app.add_subcommand("certify", "entangling-gate certification simulation");
  certify_cmd->add_option("--state", state_path, "two-qubit state JSON")->required();
  certify_cmd->add_option("--strategy", strategy, "memoryless | classical | quantum_bell")->required();
  certify_cmd->add_option("--rounds", rounds, "number of rounds (>= 1000)");
  certify_cmd->add_option("--seed", seed, "RNG seed");
  certify_cmd->add_option("--transcript", transcript_path, "write round,k,guess CSV");
  certify_cmd->add_option("--out", out_path, "output file");

  auto* cv_cmd = app.add_subcommand("cv-rate", "lossy-channel rate report");
  cv_cmd->add_option("--eta", eta_list, "transmissivities")->required();
  cv_cmd->add_option("--mu", mu_list, "TMSV variances")->default_val("10000");
  cv_cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  cv_cmd->add_option("--layout", layout, "wide | long (csv only)")->check(CLI::IsMember({"wide", "long"}));
  cv_cmd->add_option("--out", out_path, "output file");

  auto* plob_cmd = app.add_subcommand("plob-sweep", "lossy-channel secret-key capacity sweep");
  plob_cmd->add_option("--eta", eta_list, "transmissivities")->required();
  plob_cmd->add_option("--format", sweep_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  plob_cmd->add_option("--out", out_path, "output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  const Emitter em{out_path, out};
  try {
    if (discord_cmd->parsed()) return cmd_discord(state_path, measure, em);
    if (game_cmd->parsed()) return cmd_game(state_path, ensemble_path, em);
    if (certify_cmd->parsed()) return cmd_certify(state_path, strategy, rounds, seed, transcript_path, em);
    if (cv_cmd->parsed()) return cmd_cv_rate(eta_list, mu_list, format, layout, em);
    if (plob_cmd->parsed()) return cmd_plob_sweep(eta_list, sweep_format, em);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  err << kUsage;
  return kExitUsage;
}

}  // namespace discordia::cli
