#pragma once

#include <string>
#include <utility>

namespace quadtwist {

enum class CheckStatus { pass, fail, assumption };

/// One verification record: what was checked (name), the identity or fact it
/// establishes (anchor), the outcome, and free-form details for the report.
struct CheckResult {
  std::string name;
  std::string anchor;
  CheckStatus status = CheckStatus::fail;
  std::string details;
  double wall_ms = 0.0;

  bool passed() const { return status == CheckStatus::pass; }

  static CheckResult make(std::string name, std::string anchor, bool ok, std::string details = "") {
    return CheckResult{std::move(name), std::move(anchor),
                       ok ? CheckStatus::pass : CheckStatus::fail, std::move(details)};
  }
};

inline const char* status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::assumption: return "assumption";
  }
  return "?";
}

}  // namespace quadtwist
