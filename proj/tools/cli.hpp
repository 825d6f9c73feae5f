#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sosrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. args excludes the program name. Reports go to
/// `out` unless --out names a directory; diagnostics and wall time go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sosrank::cli
