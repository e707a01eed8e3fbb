#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace refring::cli {

enum ExitCode : int {
  kOk = 0,
  kViolated = 1,
  kInconclusive = 2,
  kInputError = 3,
};

/// Runs one command line (without the program name). `REFRING_SEARCH_BUDGET`
/// in the environment overrides the default search budget.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace refring::cli
