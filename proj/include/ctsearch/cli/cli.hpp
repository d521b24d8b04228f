#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctsearch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitEnvironment = 2;
inline constexpr int kExitUsage = 64;

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctsearch::cli
