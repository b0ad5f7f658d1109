#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tubepack {

// Process exit codes of the command-line driver. Stable for scripting.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,           // bad or unknown flags
  kExitParseFailure = 2,    // unreadable or invalid track/schedule file
  kExitInfeasible = 3,      // instance rejected (some tube longer than t_max)
  kExitNMaxExceeded = 4,    // best state still has more than n_max colliding pairs
  kExitOracleTooLarge = 5,  // exhaustive search over budget
  kExitIoError = 6,         // cannot write outputs
};

// Entry point behind the `tubepack` binary; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tubepack
