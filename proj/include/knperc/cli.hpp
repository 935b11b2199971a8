#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace knperc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBudget = 3;

/// Entry point of the `knperc` executable. Output goes to --out or stdout.
int run(int argc, char** argv);

/// Same, with explicit streams; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace knperc::cli
