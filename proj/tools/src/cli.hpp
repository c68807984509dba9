#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace egcount::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerificationFailed = 2,
  kIoError = 3,
};

/// Runs the egcount command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace egcount::cli
