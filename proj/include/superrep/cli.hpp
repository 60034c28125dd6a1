#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace superrep {

/// Dispatches one CLI invocation (args excludes the program name) and writes
/// the machine-readable document plus the human-readable table to out,
/// diagnostics to err. Exit codes: 0 success, 1 validation failure,
/// 2 analytic anomaly (arbitrage where a price was requested, infeasible or
/// unbounded requested problem), 3 parse/usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace superrep
