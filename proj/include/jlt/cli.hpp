#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jlt {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitConvergence = 3 };

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "x,y,z", "lo:hi:step" (inclusive), or, when `allow_pow2` is set,
/// "pow2:k0:k1" meaning 1 + 2^-k for k = k0..k1. Throws ValidationError.
std::vector<double> parse_grid(const std::string& text, bool allow_pow2 = false);

}  // namespace jlt
