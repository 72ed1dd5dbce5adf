#pragma once

// Command-line front end: subcommand parsing and dispatch.  Kept in the
// library so tests can drive it without spawning processes.

#include <iosfwd>
#include <string>
#include <vector>

namespace padist {

// Exit status: 0 success, 1 a verification record failed, 2 usage or
// input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padist
