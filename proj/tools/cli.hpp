#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isodist::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kUsageError = 2,
  kBudgetExceeded = 3,
};

/// Runs one command line (args excludes the program name). Data goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isodist::cli
