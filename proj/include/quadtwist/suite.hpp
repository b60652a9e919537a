#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadtwist/check.hpp"
#include "quadtwist/json_io.hpp"
#include "quadtwist/rational.hpp"

namespace quadtwist {

/// Configuration problems exit with status 2 rather than 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Suite { arith, schwarz, twist, prop1 };
enum class ReportFormat { text, json };

struct SuiteConfig {
  Rational alpha = Rational(2);
  std::set<Suite> suites = {Suite::arith, Suite::schwarz, Suite::twist, Suite::prop1};
  std::int64_t degree_bound = 8;
  std::uint64_t seed = 424242;
  ReportFormat format = ReportFormat::text;
  bool trace = false;
  bool no_timing = false;
  std::optional<std::string> map_file;
};

struct VerificationReport {
  SuiteConfig config;
  std::vector<CheckResult> checks;
  std::optional<OrderedJson> trace_json;

  std::size_t count(CheckStatus s) const;
  /// Overall pass: no failing check; assumptions never flip the status.
  bool overall_pass() const { return count(CheckStatus::fail) == 0; }
};

/// Runs the selected suites in dependency order (arith, schwarz, twist,
/// prop1) for the configured alpha. Deterministic for a fixed
/// (alpha, seed, degree_bound). Throws ConfigError for an invalid
/// configuration (square alpha, out-of-range degree bound).
VerificationReport run_suite(const SuiteConfig& cfg);

/// Stable line-oriented text or schema'd JSON; byte-identical across runs of
/// the same configuration when timings are suppressed.
std::string emit_report(const VerificationReport& report);

int report_exit_code(const VerificationReport& report);

std::string suite_name(Suite s);

}  // namespace quadtwist
