#pragma once

// Fast invariant suite behind `covstark selfcheck`.

#include <string>
#include <vector>

namespace covstark {

struct RunConfig;

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;     // measured error or residual
    double tolerance = 0.0;
    std::string detail;
};

std::vector<CheckResult> run_selfcheck(const RunConfig& cfg);

/// Fixed-width pass/fail table, one line per check.
std::string format_check_table(const std::vector<CheckResult>& checks);

} // namespace covstark
