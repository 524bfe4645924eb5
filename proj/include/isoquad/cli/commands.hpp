#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isoquad::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool with `args` (program name excluded). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count from ISOQUAD_THREADS; hardware concurrency when unset.
unsigned threads_from_env();

}  // namespace isoquad::cli
