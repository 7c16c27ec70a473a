#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using discordia::cli::run;
using nlohmann::json;

namespace {

const std::string kData = DISCORDIA_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  for (std::string l; std::getline(ss, l);) v.push_back(l);
  return v;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "discordia_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("usage and unknown subcommands") {
  CHECK(invoke({}).code == 64);
  const Result r = invoke({"frobnicate"});
  CHECK(r.code == 64);
  CHECK(r.err.find("usage:") != std::string::npos);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("discord subcommand") {
  const Result r = invoke({"discord", "--state", kData + "/bell.json", "--measure", "1"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["discord"].get<double>() - 1.0) <= 1e-3);
  CHECK(std::abs(j["mutual_info"].get<double>() - 2.0) <= 1e-9);

  const Result cc = invoke({"discord", "--state", kData + "/classical_corr.json", "--measure", "1"});
  REQUIRE(cc.code == 0);
  CHECK(json::parse(cc.out)["discord"].get<double>() <= 1e-6);

  const Result g = invoke({"discord", "--state", kData + "/tmsv.json", "--measure", "0"});
  REQUIRE(g.code == 0);
  CHECK(json::parse(g.out)["kind"] == "gaussian");
}

TEST_CASE("game subcommand") {
  const Result r = invoke({"game", "--state", kData + "/bell.json", "--ensemble", kData + "/pauli4.json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["iq"].get<double>() - 2.0) <= 2e-3);
  CHECK(std::abs(j["ic"].get<double>() - 1.0) <= 2e-3);
  CHECK(std::abs(j["i0"].get<double>()) <= 2e-3);
  CHECK(invoke({"game", "--state", kData + "/bell.json"}).out == r.out);
}

TEST_CASE("certify subcommand") {
  const auto transcript = scratch("transcript.csv");
  const Result r = invoke({"certify", "--state", kData + "/bell.json", "--strategy", "quantum_bell", "--rounds",
                           "10000", "--seed", "7", "--transcript", transcript.string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["certified"] == true);
  const auto rows = [&] {
    std::ifstream in(transcript);
    std::stringstream ss;
    ss << in.rdbuf();
    return lines(ss.str());
  }();
  CHECK(rows.size() == 10001);
  CHECK(rows.front() == "round,k,guess");

  CHECK(invoke({"certify", "--state", kData + "/bell.json", "--strategy", "quantum_bell", "--rounds", "10"}).code == 2);
  CHECK(invoke({"certify", "--state", kData + "/bell.json", "--strategy", "telepathy"}).code == 2);
  CHECK(invoke({"certify", "--state", kData + "/tmsv.json", "--strategy", "classical"}).code == 2);
}

TEST_CASE("plob-sweep subcommand") {
  const Result r = invoke({"plob-sweep", "--eta", "0.1:0.9:0.1"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 10);
  CHECK(l[0] == "eta,plob,linearization");
  CHECK(l[5].rfind("0.5,1,", 0) == 0);
  CHECK(r.out.find('\r') == std::string::npos);

  const Result j = invoke({"plob-sweep", "--eta", "0.5", "--format", "json"});
  REQUIRE(j.code == 0);
  CHECK(json::parse(j.out)[0]["plob"].get<double>() == 1.0);

  CHECK(invoke({"plob-sweep", "--eta", "1"}).code == 3);
  CHECK(invoke({"plob-sweep", "--eta", "1.5"}).code == 2);
  CHECK(invoke({"plob-sweep", "--eta", "abc"}).code == 2);
}

TEST_CASE("cv-rate subcommand") {
  const Result r = invoke({"cv-rate", "--eta", "0.5", "--mu", "10000"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["r_reverse"].get<double>() - 1.0) <= 5e-3);
  CHECK(j["ef_be_separable"] == true);

  const Result wide = invoke({"cv-rate", "--eta", "0.2,0.8", "--mu", "10,100", "--format", "csv"});
  REQUIRE(wide.code == 0);
  const auto l = lines(wide.out);
  REQUIRE(l.size() == 5);
  CHECK(l[0] == "eta,mu,rci,discord_ba,plob,gap");
  CHECK(l[1].rfind("0.2,10,", 0) == 0);
  CHECK(l[4].rfind("0.8,100,", 0) == 0);

  const Result lng = invoke({"cv-rate", "--eta", "0.5", "--mu", "100", "--format", "csv", "--layout", "long"});
  REQUIRE(lng.code == 0);
  CHECK(lines(lng.out)[0] == "mu,eta,quantity,value");

  CHECK(invoke({"cv-rate", "--eta", "0"}).code == 3);
  CHECK(invoke({"cv-rate", "--eta", "0.5", "--mu", "0.5"}).code == 2);
  CHECK(invoke({"cv-rate", "--eta", "0.5", "--format", "xml"}).code == 2);
}

TEST_CASE("validation failures on inputs") {
  CHECK(invoke({"discord", "--state", kData + "/missing.json", "--measure", "1"}).code == 2);
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << R"({"modes": 1, "cov": [[0.5, 0], [0, 0.5]]})";
  const Result r = invoke({"discord", "--state", bad.string(), "--measure", "0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("bona fide violated") != std::string::npos);
  std::ofstream(bad) << "{ not json";
  CHECK(invoke({"discord", "--state", bad.string(), "--measure", "0"}).code == 2);
  CHECK(invoke({"discord", "--state", kData + "/bell.json", "--measure", "5"}).code == 2);
  CHECK(invoke({"discord", "--state", kData + "/bell.json"}).code == 2);
}

TEST_CASE("outputs are deterministic and --out matches stdout") {
  const std::vector<std::string> args = {"certify", "--state", kData + "/bell.json", "--strategy", "classical",
                                         "--rounds", "2000", "--seed", "11"};
  const Result a = invoke(args), b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  const auto path = scratch("rate.csv");
  const std::vector<std::string> cv = {"cv-rate", "--eta", "0.3,0.6", "--mu", "10,1000", "--format", "csv"};
  const Result s = invoke(cv);
  auto with_out = cv;
  with_out.insert(with_out.end(), {"--out", path.string()});
  const Result f = invoke(with_out);
  REQUIRE(f.code == 0);
  CHECK(f.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == s.out);
}
