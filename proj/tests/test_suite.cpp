#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "quadtwist/json_io.hpp"
#include "quadtwist/prop1.hpp"
#include "quadtwist/schwarz.hpp"
#include "quadtwist/suite.hpp"

using namespace quadtwist;

TEST_CASE("full run over alpha = 2") {
  SuiteConfig cfg;
  cfg.no_timing = true;
  VerificationReport report = run_suite(cfg);
  CHECK(report.overall_pass());
  CHECK(report.count(CheckStatus::pass) >= 14);
  CHECK(report.count(CheckStatus::fail) == 0);
  CHECK(report.count(CheckStatus::assumption) == 2);
  CHECK(report_exit_code(report) == 0);
}

TEST_CASE("square alpha is a config error") {
  SuiteConfig cfg;
  cfg.alpha = Rational(9, 4);
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);

  SuiteConfig out_of_range;
  out_of_range.degree_bound = 13;
  CHECK_THROWS_AS(run_suite(out_of_range), ConfigError);
}

TEST_CASE("suite selection") {
  SuiteConfig cfg;
  cfg.alpha = Rational(-1);
  cfg.suites = {Suite::schwarz};
  cfg.no_timing = true;
  VerificationReport report = run_suite(cfg);
  CHECK(report.overall_pass());
  // The arithmetic kernel always runs; twist and prop1 stay absent.
  for (const auto& c : report.checks) {
    bool expected = c.name.rfind("schwarz.", 0) == 0 || c.name.rfind("arith.", 0) == 0;
    CHECK(expected);
  }
  bool saw_arith = false;
  for (const auto& c : report.checks) saw_arith = saw_arith || c.name.rfind("arith.", 0) == 0;
  CHECK(saw_arith);
  CHECK(report.count(CheckStatus::assumption) == 1);
}

TEST_CASE("report text format") {
  SuiteConfig cfg;
  cfg.suites = {Suite::arith};
  cfg.no_timing = true;
  VerificationReport report = run_suite(cfg);
  std::string text = emit_report(report);
  CHECK(text.find("CHECK arith.norm_multiplicative [N(z1*z2) = N(z1)*N(z2)] pass") !=
        std::string::npos);
  CHECK(text.find("overall: PASS") != std::string::npos);
  CHECK(text.find(" ms)") == std::string::npos);  // timings suppressed

  // Byte-identical across runs with equal config.
  CHECK(emit_report(run_suite(cfg)) == text);

  // Empty report: header plus the no-checks line.
  VerificationReport empty;
  empty.config = cfg;
  CHECK(emit_report(empty).find("no checks run") != std::string::npos);
}

TEST_CASE("report json format is byte-stable without timings") {
  SuiteConfig cfg;
  cfg.suites = {Suite::arith, Suite::prop1};
  cfg.format = ReportFormat::json;
  cfg.no_timing = true;
  cfg.trace = true;
  std::string first = emit_report(run_suite(cfg));
  std::string second = emit_report(run_suite(cfg));
  CHECK(first == second);

  OrderedJson j = OrderedJson::parse(first);
  CHECK(j["alpha"] == "2");
  CHECK(j["overall"] == "pass");
  CHECK(j.contains("trace"));
  for (const auto& c : j["checks"]) {
    CHECK_FALSE(c.contains("wall_ms"));
  }

  cfg.no_timing = false;
  OrderedJson timed = OrderedJson::parse(emit_report(run_suite(cfg)));
  CHECK(timed["checks"][0].contains("wall_ms"));
}

TEST_CASE("failure flips the exit code") {
  VerificationReport report;
  report.config = SuiteConfig{};
  report.checks.push_back(CheckResult::make("synthetic", "anchor", false, "boom"));
  CHECK_FALSE(report.overall_pass());
  CHECK(report_exit_code(report) == 1);

  // Assumptions alone never flip the status.
  VerificationReport assumed;
  assumed.config = SuiteConfig{};
  assumed.checks.push_back(
      CheckResult{"assume", "anchor", CheckStatus::assumption, "given", 0.0});
  CHECK(assumed.overall_pass());
  CHECK(report_exit_code(assumed) == 0);
}

TEST_CASE("map file checks join the report") {
  std::string path = "/tmp/quadtwist_suite_map.json";
  save_map_file(build_tau(Discriminant{Rational(2)}), path);

  SuiteConfig cfg;
  cfg.suites = {Suite::arith};
  cfg.map_file = path;
  cfg.no_timing = true;
  VerificationReport report = run_suite(cfg);
  bool saw_roundtrip = false, saw_involution = false;
  for (const auto& c : report.checks) {
    saw_roundtrip = saw_roundtrip || c.name == "map.roundtrip";
    saw_involution = saw_involution || c.name == "map.involution";
  }
  CHECK(saw_roundtrip);
  CHECK(saw_involution);
  CHECK(report.overall_pass());
  std::remove(path.c_str());
}

TEST_CASE("a K^2-shaped map file gets the full condition checks") {
  const Discriminant d2{Rational(2)};
  std::string path = "/tmp/quadtwist_suite_k2map.json";
  save_map_file(family_map(d2, QuadElem(3, 2, d2)), path);

  SuiteConfig cfg;
  cfg.suites = {Suite::arith};
  cfg.map_file = path;
  cfg.no_timing = true;
  VerificationReport report = run_suite(cfg);
  std::size_t condition_checks = 0;
  for (const auto& c : report.checks) {
    if (c.name.rfind("map.", 0) == 0 && c.name != "map.roundtrip") ++condition_checks;
  }
  CHECK(condition_checks == 5);
  CHECK(report.overall_pass());

  // A member with N(omega) != 1 shows up as a failing involution check and
  // flips the exit code.
  save_map_file(family_map(d2, QuadElem(1, 1, d2)), path);
  VerificationReport bad = run_suite(cfg);
  CHECK_FALSE(bad.overall_pass());
  CHECK(report_exit_code(bad) == 1);
  std::remove(path.c_str());
}

TEST_CASE("alternative discriminants pass the full suite") {
  for (long long alpha : {3, -1}) {
    SuiteConfig cfg;
    cfg.alpha = Rational(alpha);
    cfg.degree_bound = 4;
    cfg.no_timing = true;
    VerificationReport report = run_suite(cfg);
    CAPTURE(alpha);
    CHECK(report.overall_pass());
  }
}
