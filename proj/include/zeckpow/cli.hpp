#pragma once

// The zeckpow command line: bound, search, verify, linform.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace zeckpow {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitConfigError = 2,
  kExitUndecided = 3,
};

// Parses "3", "1..4" or "1,2,5" into a sorted list of distinct k >= 1.
// Throws std::invalid_argument on malformed input.
std::vector<unsigned> parse_k_range(const std::string& text);

// Runs the CLI on args (without the program name). `in` feeds `linform`
// when no --input is given.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace zeckpow
