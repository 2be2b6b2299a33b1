#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace refgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

// Runs one subcommand. `args` excludes the program name. Tables go to `out`
// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace refgame::cli
