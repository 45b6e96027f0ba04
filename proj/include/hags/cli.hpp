#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hags {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalidInput = 2,
  kExitDiffer = 3,
  kExitNotDefinitive = 4,
};

/// Runs one command line. `args` excludes the program name.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hags
