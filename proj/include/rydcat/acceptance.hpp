#pragma once

#include <string>
#include <vector>

namespace rydcat {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::string> details;
};

struct AcceptanceOptions {
  /// Fault-injection hook: scales the published coefficient table so the
  /// coefficient check must fail.
  bool perturb_golden = false;
  /// Run only this criterion (1-8); 0 runs all.
  int only = 0;
};

/// Runs the acceptance criteria in order. Output is deterministic: no
/// timings appear in the details, only pass/fail against the time limits.
std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opts = {});

/// One "[PASS]/[FAIL] C<k> <name>" line per check followed by indented
/// detail lines.
std::string format_report(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace rydcat
