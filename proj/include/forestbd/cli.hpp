#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace forestbd {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitFound = 0,      // Found / true / command succeeded
  kExitNo = 1,         // No / false
  kExitUsage = 2,      // usage or input error
  kExitResource = 3,   // resource guard tripped
};

/// Runs the command-line tool in-process. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace forestbd
