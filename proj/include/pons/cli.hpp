#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pons::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a proof failed, a cycle, a model failure
inline constexpr int kExitUsage = 2;   // bad flags, unreadable file, syntax error

// Runs `ponscheck` with `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pons::cli
