#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covgrid {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,   // usage, I/O, parse or validation failure
  kExitDegenerate = 2,   // polygon rejected as degenerate
  kExitSizeLimit = 3,    // exact solve over the cap, no fallback requested
};

// Runs the tool with argv-style arguments (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covgrid
