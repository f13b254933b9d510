#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chaos_target {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitNumeric = 3,
};

/// Runs the command line `args` (without the program name) writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
///
/// Subcommands: fixed-point | uncontrolled | batch | sweep | curves.
/// The CHAOS_TARGET_SEED environment variable overrides the config seed;
/// --seed overrides both.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chaos_target
