#pragma once

#include <iosfwd>

namespace revisop {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 1,
    exit_domain_error = 2,
    exit_verification_failed = 3,
};

/// Entry point of the `revisop` tool: bound, lune, verify, sweep.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace revisop
