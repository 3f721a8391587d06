#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyparr::cli {

/// Exit statuses of the command-line tool.
enum Exit : int { ok = 0, usage = 1, resource = 2, internal = 3 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyparr::cli
