#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace transchrome {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDomain = 2,
  kExitResource = 3,
  kExitVerification = 4,
};

/// Runs the tool on `args` (without the program name), writing results to
/// `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace transchrome
