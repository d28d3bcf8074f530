#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fdcolor {

enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitInput = 2,
  kExitInvariant = 3,
  kExitCap = 4,
};

// Runs the command line `args` (args[0] is the program name). Documents go to
// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdcolor
