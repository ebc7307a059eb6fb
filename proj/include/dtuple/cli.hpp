#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dtuple::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;  // verification or audit failures, truncated results
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtuple::cli
