#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tailix {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,       // unreadable or invalid input data
  kExitDegenerate = 3,  // estimator degeneracy, all-degenerate simulation
  kExitUsage = 4,       // bad flags or parameters
  kExitNumeric = 5,     // quadrature or root-finder failure
};

/// Runs the tool on `args` (args[0] is the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tailix
