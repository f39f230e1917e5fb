#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trialalloc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitComputation = 3;

/// Entry point for the `trialalloc` command. Results go to `out`,
/// diagnostics to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Same, with argv[1..] given as strings (no program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trialalloc::cli
