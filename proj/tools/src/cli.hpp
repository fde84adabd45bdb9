#pragma once

#include <string>
#include <vector>

namespace stokeslab::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv, runs one subcommand and returns its exit code.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace stokeslab::cli
