#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ahcurv {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitNoSolution = 3,
  kExitHypothesis = 4,
  kExitInconclusive = 5,
};

/// Runs the tool on `args` (args[0] is the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ahcurv
