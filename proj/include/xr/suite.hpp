// The verification battery behind both `xr suite` and the acceptance test
// binary: twelve named checks with hard tolerances, one pass/fail line each.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace xr {

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;   // worst observed residual (semantics in detail)
  double bound = 0.0;   // the tolerance it was held against
  std::string detail;
};

// Runs every check; results come back sorted by name regardless of
// execution order.
std::vector<CheckResult> run_acceptance(std::uint64_t seed = 42);

// Prints one line per check; returns true when all passed.
bool print_acceptance(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace xr
