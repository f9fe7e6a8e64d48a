#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace susy {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  /// Reported alongside the verdict but not part of it.
  bool informational = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  /// Individual checks behind the verdict.
  std::vector<CheckResult> checks;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// 0 selects thread_cap().
  unsigned threads = 0;
  std::uint32_t seed = 20240611;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 11;

/// Runs one acceptance criterion (1..11). Unexpected exceptions become a
/// failed check rather than escaping.
CriterionResult run_criterion(int id, const VerifyOptions& options = {});

/// Runs all criteria in order.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options = {});

/// "PASS  3  title: detail" or "FAIL ...".
std::string format_line(const CriterionResult& r);

}  // namespace susy
