#pragma once

#include <string>
#include <vector>

namespace minimax {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the built-in invariant checks. Every tolerance is multiplied by
/// tol_scale, so tol_scale = 0 demands exact agreement.
std::vector<CheckResult> run_selftest(double tol_scale = 1.0);

}  // namespace minimax
