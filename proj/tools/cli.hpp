#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bipart::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerdictFailed = 1;  // some report is not pass/proved
inline constexpr int kUsage = 2;          // bad flags or malformed input
inline constexpr int kResourceCap = 3;    // coefficient budget exceeded

// Runs the tool on `args` (without the program name). Reports go to `out`,
// diagnostics and pretty tables to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bipart::cli
