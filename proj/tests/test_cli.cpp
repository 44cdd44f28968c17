#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = swm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string without_timestamp(const std::string& s) {
  static const std::regex ts(R"re("timestamp": ?"[^"]*")re");
  return std::regex_replace(s, ts, "\"timestamp\":\"\"");
}

std::string tmp(const std::string& name) { return std::string(SWMOMENT_TEST_TMP) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("missing --seed is a usage error") {
  for (const std::string sub : {"describe", "identities", "certify", "frequency", "covering", "residual"}) {
    CAPTURE(sub);
    CHECK(invoke({sub, "--rep", "classical"}).code == swm::cli::kUsage);
  }
}

TEST_CASE("unknown flags and bad values are usage errors") {
  CHECK(invoke({"describe", "--seed", "1", "--rep", "classical", "--verbose"}).code == 2);
  CHECK(invoke({"describe", "--seed", "1", "--rep", "nope"}).code == 2);
  CHECK(invoke({"certify", "--seed", "1", "--estimator", "magic"}).code == 2);
  CHECK(invoke({"certify", "--seed", "1", "--samples", "-5"}).code == 2);
  CHECK(invoke({"certify", "--seed", "1", "--rep", "classical", "--estimator", "sigma"}).code == 2);
  CHECK(invoke({"frequency", "--seed", "1"}).code == 2);
  CHECK(invoke({"frequency", "--seed", "1", "--synthetic", "harmonic-1", "--radii", "5"}).code == 2);
  CHECK(invoke({"frequency", "--seed", "1", "--synthetic", "harmonic-9"}).code == 2);
  CHECK(invoke({"covering", "--seed", "1", "--grid", "/nonexistent/file"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
}

TEST_CASE("help lists every subcommand and exit codes") {
  const Result r = invoke({"--help"});
  CHECK(r.code == 0);
  for (const char* s : {"describe", "identities", "certify", "frequency", "covering", "residual", "Exit codes"})
    CHECK(r.out.find(s) != std::string::npos);
  const Result sub = invoke({"certify", "--help"});
  CHECK(sub.code == 0);
  for (const char* f : {"--rep", "--estimator", "--delta-mu", "--samples", "--multistarts", "--seed", "--out"})
    CHECK(sub.out.find(f) != std::string::npos);
  const Result freq = invoke({"frequency", "--help"});
  CHECK(freq.out.find("radius,m,D,N") != std::string::npos);
}

TEST_CASE("identities on su2-adjoint pass") {
  const Result r = invoke({"identities", "--rep", "su2-adjoint", "--samples", "500", "--seed", "7"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    CHECK(line.find("\"pass\":true") != std::string::npos);
  }
  CHECK(count == 4);
}

TEST_CASE("runs are reproducible modulo the timestamp") {
  const std::vector<std::vector<std::string>> configs = {
      {"describe", "--rep", "adhm12", "--seed", "1"},
      {"identities", "--samples", "200", "--seed", "3"},
      {"certify", "--rep", "su2-adjoint", "--samples", "200", "--multistarts", "3", "--seed", "5"},
      {"certify", "--rep", "adhm12", "--estimator", "quadratic", "--samples", "200", "--multistarts", "3", "--seed", "5"},
      {"frequency", "--synthetic", "smooth", "--rep", "su2-adjoint", "--spacing", "0.0625", "--seed", "9"},
      {"covering", "--synthetic", "mixture", "--spacing", "0.125", "--seed", "4", "--c-f", "0.5"},
      {"residual", "--synthetic", "smooth", "--rep", "adhm12", "--spacing", "0.125", "--seed", "2"},
  };
  for (const auto& cfg : configs) {
    CAPTURE(cfg[0]);
    const Result a = invoke(cfg);
    const Result b = invoke(cfg);
    CHECK(a.code == b.code);
    CHECK(!a.out.empty());
    CHECK(without_timestamp(a.out) == without_timestamp(b.out));
  }
}

TEST_CASE("sigma estimate is reported below one") {
  const Result r = invoke({"certify", "--rep", "adhm12", "--estimator", "sigma", "--samples", "300", "--multistarts",
                           "4", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"c_split\"") != std::string::npos);
}

TEST_CASE("grids written by --save-grid reproduce the profile") {
  const std::string grid = tmp("cli_harmonic.grid");
  const Result a = invoke({"frequency", "--synthetic", "harmonic-2", "--spacing", "0.0625", "--save-grid", grid,
                           "--seed", "1"});
  REQUIRE(a.code == 0);
  const Result b = invoke({"frequency", "--grid", grid, "--seed", "1"});
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("radius,m,D,N\n", 0) == 0);
}

TEST_CASE("--out and --report write files") {
  const std::string out = tmp("cli_covering.json");
  CHECK(invoke({"covering", "--synthetic", "zero", "--spacing", "0.125", "--seed", "1", "--out", out}).code == 0);
  CHECK(slurp(out).find("\"hypothesis_holds\": true") != std::string::npos);
  const std::string report = tmp("cli_frequency.json");
  CHECK(invoke({"frequency", "--synthetic", "harmonic-1", "--spacing", "0.03125", "--seed", "1", "--report", report})
            .code == 0);
  CHECK(slurp(report).find("\"monotonicity\"") != std::string::npos);
}

TEST_CASE("covering flags the shell density and reports both readings") {
  const Result r = invoke({"covering", "--synthetic", "shell", "--amplitude", "20", "--spacing", "0.083333333333333329",
                           "--both-readings", "--stride", "2", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"reciprocal\"") != std::string::npos);
  CHECK(r.out.find("\"literal\"") != std::string::npos);
  CHECK(r.out.find("\"hypothesis_holds\": false") != std::string::npos);
}
