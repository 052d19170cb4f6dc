#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mealypred::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitInconsistent = 4;

/// Runs one invocation. `args` excludes the program name. `in` backs every
/// "-" argument.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace mealypred::cli
