#pragma once

// Command dispatch and deterministic report emission.

#include <string>

#include "covstark/config.hpp"

namespace covstark {

struct RunResult {
    int exit_code = 0;  // 0 ok, 2 selfcheck failure
    std::string report; // report body in the configured format
    std::string table;  // selfcheck pass/fail table, empty otherwise
};

/// Runs the configured command. Module errors propagate as exceptions.
RunResult run(const RunConfig& cfg);

/// Shortest round-trip text of a double, fixed across runs.
std::string format_double(double v);

} // namespace covstark
