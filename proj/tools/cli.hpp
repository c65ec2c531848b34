#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lr::cli {

/// Runs `lr <args...>` (args exclude the program name) and returns the exit
/// code: 0 success, 1 a judgment or translation failed, 2 bad usage, an
/// unreadable file or a parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lr::cli
