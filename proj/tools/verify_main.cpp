// Command-line front end for the verification suites.
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadtwist/suite.hpp"

using namespace quadtwist;

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the twisted torus action on affine 4-space"};

  std::string alpha_text = "2";
  std::vector<std::string> suite_names;
  std::int64_t degree_bound = 8;
  std::uint64_t seed = 424242;
  std::string format = "text";
  bool trace = false;
  bool no_timing = false;
  std::string map_file;

  app.add_option("--alpha", alpha_text, "Non-square rational p/q defining K = Q(sqrt(alpha))")
      ->capture_default_str();
  app.add_option("--suite", suite_names,
                 "Suites to run: all, arith, schwarz, twist, prop1 (repeatable)");
  app.add_option("--degree-bound", degree_bound, "Ansatz degree bound (0..12)")
      ->capture_default_str();
  app.add_option("--seed", seed, "Seed for the sampled checks")->capture_default_str();
  app.add_option("--format", format, "Report format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--trace", trace, "Attach the elimination trace to the JSON report");
  app.add_flag("--no-timing", no_timing, "Omit wall times (byte-stable reports)");
  app.add_option("--map", map_file, "Verify a map from a JSON file alongside the suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    SuiteConfig cfg;
    try {
      cfg.alpha = Rational::parse(alpha_text);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--alpha: ") + e.what());
    }
    if (!suite_names.empty()) {
      cfg.suites.clear();
      for (const std::string& s : suite_names) {
        if (s == "all") {
          cfg.suites = {Suite::arith, Suite::schwarz, Suite::twist, Suite::prop1};
        } else if (s == "arith") {
          cfg.suites.insert(Suite::arith);
        } else if (s == "schwarz") {
          cfg.suites.insert(Suite::schwarz);
        } else if (s == "twist") {
          cfg.suites.insert(Suite::twist);
        } else if (s == "prop1") {
          cfg.suites.insert(Suite::prop1);
        } else {
          throw ConfigError("unknown suite '" + s + "'");
        }
      }
    }
    cfg.degree_bound = degree_bound;
    cfg.seed = seed;
    cfg.format = format == "json" ? ReportFormat::json : ReportFormat::text;
    cfg.trace = trace;
    cfg.no_timing = no_timing;
    if (!map_file.empty()) cfg.map_file = map_file;

    VerificationReport report = run_suite(cfg);
    std::cout << emit_report(report);
    return report_exit_code(report);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
