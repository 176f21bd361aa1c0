#pragma once

#include <string>
#include <vector>

namespace fracgs {

/// Exit codes: 0 ok, 1 check failure, 2 usage/config error, 3 unconverged.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,
    kExitUnconverged = 3,
};

/// Runs the command line (without the program name); returns the exit code.
int run_cli(const std::vector<std::string>& args);

}  // namespace fracgs
