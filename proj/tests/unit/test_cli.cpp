#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "commands.hpp"
#include "radbif/errors.hpp"
#include "report.hpp"
#include "verify.hpp"

using namespace radbif::cli;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("reals keep 17 significant digits") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_real(M_PI)) == M_PI);
  CHECK(format_real(std::nan("")) == "nan");
  CHECK(format_real(-INFINITY) == "-inf");
}

TEST_CASE("eigs documents") {
  const auto l = lines(to_csv(cmd_eigs(1, 1.0)));
  REQUIRE(l.size() >= 3);
  CHECK(l[0] == "#schema=v1");
  CHECK(l.back().rfind("1,3.83170597020751", 0) == 0);
  CHECK(l.back().find(",2.40482555769577") != std::string::npos);
  CHECK(l[l.size() - 2] == "0,,,0,");
  const auto l0 = lines(to_csv(cmd_eigs(0, 1.0)));
  CHECK(l0.back() == "0,,,0,");
  CHECK_THROWS_AS(cmd_eigs(-1, 1.0), radbif::ParameterError);
}

TEST_CASE("timemap with an empty grid has only the header") {
  const Document d = cmd_timemap(1.0, parse_real_list(""), 1e-10);
  CHECK(d.main.rows.empty());
  CHECK(lines(to_csv(d)).back() == "h,phi,error_estimate");
  const Document e = cmd_timemap(1.0, parse_real_list("1e-6"), 1e-10);
  CHECK(std::get<double>(e.main.rows[0][1]) == doctest::Approx(1.1107207).epsilon(1e-6));
  CHECK_THROWS_AS(cmd_timemap(1.0, parse_real_list("-1"), 1e-10), radbif::AdmissibilityError);
  CHECK_THROWS(parse_real_list("1,abc"));
}

TEST_CASE("JSON output parses and carries the schema") {
  const auto j = nlohmann::json::parse(to_json(cmd_eigs(2, 1.0)));
  CHECK(j["schema"] == "v1");
  CHECK(j["command"] == "eigs");
  CHECK(j["rows"].size() == 3);
  CHECK(j["rows"][0]["y_k"].is_null());
  CHECK(j["rows"][2]["mu_k"].get<double>() == doctest::Approx(49.2184563217).epsilon(1e-10));
}

TEST_CASE("atomic writes replace the target and leave no temporaries") {
  const auto dir = std::filesystem::temp_directory_path() / "radbif_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto target = dir / "out.csv";
  write_atomic(target, "first\n");
  write_atomic(target, "second\n");
  CHECK(slurp(target) == "second\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  CHECK_THROWS(write_atomic(dir / "missing" / "x.csv", "x"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("shoot document") {
  const Document d = cmd_shoot(5.0, 0.0, 1.0, {});
  for (const auto& row : d.main.rows) {
    CHECK(std::get<double>(row[1]) == 0.0);
    CHECK(std::get<double>(row[2]) == 0.0);
  }
  CHECK_THROWS_AS(cmd_shoot(4.0, -0.5, 1.0, {}), radbif::AdmissibilityError);
}

TEST_CASE("verify: default passes, injected tolerance fails with names") {
  VerifyOptions opt;
  opt.suites = {"model", "timemap"};
  const VerifyReport ok = run_verify(opt);
  CHECK(ok.failures() == 0);
  opt.check_tol = 1e-30;
  const VerifyReport bad = run_verify(opt);
  CHECK(bad.failures() > 0);
  for (const auto& c : bad.checks) {
    if (!c.passed) CHECK_FALSE(c.name.empty());
  }
  opt.suites = {"nope"};
  CHECK_THROWS_AS(run_verify(opt), radbif::ParameterError);
}

TEST_CASE("verify reports are reproducible for a seed") {
  VerifyOptions opt;
  opt.suites = {"timemap", "shooting"};
  opt.seed = 42;
  CHECK(to_csv(run_verify(opt).to_document()) == to_csv(run_verify(opt).to_document()));
  VerifyOptions other = opt;
  other.seed = 43;
  CHECK(to_csv(run_verify(opt).to_document()) != to_csv(run_verify(other).to_document()));
}
