#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pebbles::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kUsageError = 2,
  kMismatch = 3,
  kBudgetExhausted = 4,
};

// Runs one command. `args` excludes the program name. Results go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pebbles::cli
