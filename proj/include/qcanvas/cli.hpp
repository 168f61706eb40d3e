#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qcanvas {

// Exit-code contract: 0 success, 1 usage error, 2 data/validation failure,
// 3 partial convergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitPartial = 3;

/// All unordered pairs with repetition (A <= B lexicographically):
/// n(n+1)/2 systems for n symbols.
std::vector<std::pair<std::string, std::string>> enumerate_all_pairs(
    std::vector<std::string> symbols);

/// Runs the full command line (without argv[0]); returns the exit code.
int run_cli(const std::vector<std::string>& args);

}  // namespace qcanvas
