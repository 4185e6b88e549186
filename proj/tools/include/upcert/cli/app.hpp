#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace upcert::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUndecided = 2,
  kExitInput = 3,
  kExitPrecision = 4,
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace upcert::cli
