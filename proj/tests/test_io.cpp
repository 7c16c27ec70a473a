#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "discordia/io.hpp"
#include "discordia/random.hpp"

using namespace discordia;
using io::json;

namespace {

json reparse(const json& j) { return json::parse(j.dump()); }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("finite state round trip is bit-exact") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const QState s = random_state({2, 3}, rng);
    const QState back = io::qstate_from_json(reparse(io::to_json(s)));
    CHECK(back.dims() == s.dims());
    CHECK((back.matrix().array() == s.matrix().array()).all());
  }
}

TEST_CASE("Gaussian state round trip is bit-exact") {
  const GaussianState s = apply_loss(tmsv(1234.5678), 1, LossyChannel(0.3141), true);
  const GaussianState back = io::gaussian_from_json(reparse(io::to_json(s)));
  CHECK(back.modes() == 3);
  CHECK((back.cov().array() == s.cov().array()).all());
  CHECK((back.mean().array() == s.mean().array()).all());
  CHECK(std::holds_alternative<GaussianState>(io::state_from_json(io::to_json(s))));
  CHECK(std::holds_alternative<QState>(io::state_from_json(io::to_json(bell_state()))));
}

TEST_CASE("ensemble round trip") {
  const EncodingEnsemble e = EncodingEnsemble::pauli4(1);
  const EncodingEnsemble back = io::ensemble_from_json(reparse(io::to_json(e)));
  REQUIRE(back.entries().size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(back.entries()[i].p == e.entries()[i].p);
    CHECK(back.entries()[i].u.target == 1);
    CHECK((back.entries()[i].u.matrix.array() == e.entries()[i].u.matrix.array()).all());
  }
}

TEST_CASE("schema diagnostics") {
  auto message = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const ValidationError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message([] { io::qstate_from_json(json::parse(R"({"re": [[1]]})")); }).find("dims") != std::string::npos);
  CHECK(message([] { io::qstate_from_json(json::parse(R"({"dims": [2], "re": [[1, 0], [0]]})")); })
            .find("ragged") != std::string::npos);
  CHECK(message([] { io::qstate_from_json(json::parse(R"({"dims": [2], "re": [[1, 0], [0, 1]]})")); })
            .find("unit trace") != std::string::npos);
  CHECK(message([] { io::qstate_from_json(json::parse(R"({"dims": [2], "re": [[0.5, "x"], [0, 0.5]]})")); })
            .find("numeric") != std::string::npos);
  CHECK(message([] {
          io::gaussian_from_json(json::parse(R"({"modes": 1, "cov": [[0.5, 0], [0, 0.5]]})"));
        }).find("bona fide violated") != std::string::npos);
  CHECK(message([] { io::gaussian_from_json(json::parse(R"({"modes": 2, "cov": [[1, 0], [0, 1]]})")); }) != "");
  CHECK(message([] { io::state_from_json(json::parse(R"({"foo": 1})")); }) != "");
  CHECK(message([] {
          io::ensemble_from_json(json::parse(R"({"target": 0, "entries": [{"p": 1.0, "re": [[1, 1], [0, 1]]}]})"));
        }).find("unitary") != std::string::npos);
}

TEST_CASE("CSV formatting") {
  CHECK(io::csv_number(1.0) == "1");
  CHECK(io::csv_number(0.0144996) == "0.0144996");
  CHECK(io::csv_number(-0.0) == "0");
  CHECK(io::csv_number(1e4) == "10000");
  CHECK(io::csv({"a", "b"}, {{1.0, 2.5}, {3.0, 1.0 / 3.0}}) == "a,b\n1,2.5\n3,0.333333\n");
  CHECK(io::transcript_csv({{0, 3, 3}, {1, 2, 0}}) == "round,k,guess\n0,3,3\n1,2,0\n");
  RateReport r;
  r.eta = 0.5;
  r.mu = 100.0;
  const std::string long_csv = io::rate_reports_long_csv({r});
  CHECK(long_csv.rfind("mu,eta,quantity,value\n100,0.5,", 0) == 0);
}

TEST_CASE("atomic write replaces the target") {
  const auto dir = std::filesystem::temp_directory_path() / "discordia_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  io::write_atomic(path, "first\n");
  io::write_atomic(path, "second\n");
  CHECK(read_file(path) == "second\n");
  int files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(io::write_atomic(dir / "missing" / "x.txt", "x"), ValidationError);
}
