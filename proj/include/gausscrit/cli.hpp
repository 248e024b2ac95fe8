#pragma once

#include <iosfwd>

namespace gausscrit {

// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitVerification = 2,
    kExitIo = 3,
};

// Entry point for the gausscrit command-line tool. Subcommands: eval, scan,
// boundary, verify. Human-readable output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gausscrit
