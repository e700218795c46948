// entswap command-line front end. Kept as a library so tests can drive it
// in-process.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entswap::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsage = 2,
  kIo = 3,
};

// args excludes the program name. JSON goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entswap::cli
