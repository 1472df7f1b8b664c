#pragma once

#include <iosfwd>

namespace cha {

// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_parse_error = 1, exit_config_error = 2, exit_non_convergence = 3 };

// `cha analyze <file> [options]` and `cha transform <file> [options]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cha
