#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsds::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
    kOk = 0,        // check passed / equivalent / search found hits
    kFailed = 1,    // check failed / not equivalent / no hits
    kUsage = 2,     // bad arguments, unreadable or malformed input
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsds::cli
