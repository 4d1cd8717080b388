#pragma once

#include <string>
#include <vector>

namespace dpgs {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the `dpgs` binary. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace dpgs
