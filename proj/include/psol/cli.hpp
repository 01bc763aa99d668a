#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitInput = 2;

/// Runs one subcommand. `args` excludes the program name. The JSON report
/// goes to `out` (or --output), diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psol::cli
