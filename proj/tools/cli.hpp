#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace socioplex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. args excludes the program name. Results go to `out`
/// (or the files named by the options), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace socioplex::cli
