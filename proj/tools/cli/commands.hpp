#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsl::cli {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_rejected = 2,
    exit_not_converged = 3,
};

/// Runs `rsl <args...>` (args excludes the program name). Results go to files
/// or `out`; diagnostics and error records go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads RSL_LOG (error, info, debug) and configures the stderr logger.
void configure_logging();

}  // namespace rsl::cli
