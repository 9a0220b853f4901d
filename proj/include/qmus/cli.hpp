#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmus::cli {

enum ExitCode : int {
  kOk = 0,
  kScoreError = 1,
  kIoError = 2,
  kEnumerationCap = 3,
};

// Runs `qmus <command> ...`; args[0] is the program name. Reads QMUS_ENUM_CAP
// from the environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmus::cli
