#pragma once

// Named verification suites: the acceptance criteria and the seeded property
// suites, runnable from the CLI and from the acceptance binary.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hc::verify {

/// Bumped whenever a suite's checks or configurations change.
constexpr int kSuiteVersion = 1;

struct SuiteResult {
  std::string name;
  std::string summary;
  bool passed = false;  // every check passed and seconds <= budget_seconds
  double seconds = 0;
  double budget_seconds = 0;
  long checks = 0;
  /// First failures only; failed_checks counts all of them.
  std::vector<std::string> failures;
  long failed_checks = 0;
  /// Key observations (computed values, worst deviations), in order.
  std::vector<std::pair<std::string, std::string>> facts;
};

/// Suite names in acceptance order.
const std::vector<std::string>& suite_names();

/// Throws ValidationError for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 20240601);

}  // namespace hc::verify
