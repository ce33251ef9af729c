#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covopt {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,        // input failed validation
  kExitInfeasible = 3,  // degenerate coverage or a refused computation
};

/// Runs one `covopt` invocation. `args` includes the program name. The report goes
/// to `out` only when the command succeeds; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covopt
