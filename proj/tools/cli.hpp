#pragma once

#include <ostream>

namespace mmp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNegative = 2;

/// Runs the `mmp` command line with the given arguments; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mmp::cli
