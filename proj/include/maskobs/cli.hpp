#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maskobs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftestFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`. Exit 0 whenever the computation finished,
/// whatever the mathematical verdict.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maskobs::cli
