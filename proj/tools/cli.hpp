#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qrja::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kNotConverged = 2,
  kUnsupportedExponent = 3,
  kUnknownMethod = 4,
};

/// Runs one command line (without the program name). Progress and errors go
/// to `out` and `err`; result files go to the --out directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrja::cli
