// Runs every acceptance criterion at its stated tolerance and time budget and
// prints one PASS/FAIL line per criterion.

#include "hc/verify.hpp"

#include <cstdio>

int main() {
  int failed = 0;
  int index = 0;
  for (const auto& name : hc::verify::suite_names()) {
    ++index;
    auto r = hc::verify::run_suite(name);
    std::printf("%s %d %-17s %7.2fs (budget %.0fs) checks=%ld failed=%ld  %s\n", r.passed ? "PASS" : "FAIL", index,
                r.name.c_str(), r.seconds, r.budget_seconds, r.checks, r.failed_checks, r.summary.c_str());
    for (const auto& [k, v] : r.facts) std::printf("       %s = %s\n", k.c_str(), v.c_str());
    for (const auto& f : r.failures) std::printf("       failure: %s\n", f.c_str());
    if (r.seconds > r.budget_seconds) std::printf("       over time budget\n");
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
