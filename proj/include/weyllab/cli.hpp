#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weyllab {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,
  kExitUsage = 2,
  kExitInconsistent = 3,
  kExitHypothesis = 4,
};

// Runs one command line (args excludes the program name). Output is buffered and
// written to out/err once at the end.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weyllab
