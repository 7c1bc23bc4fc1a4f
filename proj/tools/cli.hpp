#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eufui::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kResourceLimit = 3,
};

/// Runs the euf-ui command line. `args` excludes the program name. The
/// problem is read from the positional file argument, or from `in` when it
/// is absent or "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace eufui::cli
