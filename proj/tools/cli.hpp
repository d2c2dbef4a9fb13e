#pragma once

#include <ostream>

namespace fm::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 2,
  kNonConvergence = 3,
  kPropertyFailure = 4,
};

// Parses argv, runs one command, prints a JSON record to `out` and
// diagnostics to `err`. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fm::cli
