#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unimix::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kDegenerate = 3,
};

/// Environment variable overriding the default verification tolerance.
inline constexpr const char* kTolEnv = "UNIMIX_TOL";
inline constexpr double kDefaultTol = 1e-9;

/// Runs the command line `args` (args[0] is the program name). Machine
/// readable output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unimix::cli
