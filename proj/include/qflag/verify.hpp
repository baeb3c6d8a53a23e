#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qflag/error.hpp"

namespace qflag {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;  // first mismatch, or a short summary on success
};

/// Names accepted by run_verification besides "all".
const std::vector<std::string>& verification_suites();

/// Runs the cross-oracle checks of one suite ("qanalogue", "inversions",
/// "denumerant", "flagcells") or of all of them, sized by max_n. Checks run
/// on up to `jobs` threads; results come back in a fixed order.
std::vector<CheckResult> run_verification(std::string_view suite, unsigned max_n, const Limits& limits = {},
                                          unsigned jobs = 1);

}  // namespace qflag
