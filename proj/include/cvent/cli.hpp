#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cvent {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailure = 1,
    kExitInvalidInput = 2,
    kExitIoFailure = 3,
};

/// Runs the command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvent
