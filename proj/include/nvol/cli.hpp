#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nvol::cli {

// Runs one nvol invocation. args excludes the program name.
// Exit codes: 0 success, 2 validation/usage error, 1 computation error
// (including a failed reproduce).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nvol::cli
