#pragma once
// The acceptance suite: twelve property checks with pinned grids and
// tolerances. Shared by the acceptance test binary and `conelab verify-all`.

#include <string>
#include <vector>

#include "conelab/config.hpp"

namespace conelab {

struct CheckResult {
  int criterion = 0;
  std::string id;
  std::string anchor;       // the statement being checked
  std::string measured;
  std::string expectation;
  bool pass = false;
  double seconds = 0.0;
};

constexpr int kCriteriaCount = 12;

/// Runs one criterion (1..12). Exceptions inside a check become a failed result.
CheckResult run_criterion(int criterion, const Tolerances& tol = {});
/// Runs the given criteria in order (all when empty).
std::vector<CheckResult> run_acceptance(const std::vector<int>& criteria = {}, const Tolerances& tol = {});

/// One line per result: "[PASS] 4 cz-decomposition: measured ... | expected ...".
std::string format_result(const CheckResult& r);
/// Summary JSON with one object per check and an overall "pass" flag.
std::string summary_json(const std::vector<CheckResult>& results);

}  // namespace conelab
