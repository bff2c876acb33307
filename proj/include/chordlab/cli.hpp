#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chordlab::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitTestFailed = 1;  // kstest ran but D exceeded the threshold
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitAmbiguity = 4;

/// Runs the command line `args` (program name excluded). Data goes to --out
/// when given, otherwise to `out`; the one-line summary goes to `out` when
/// data went to a file and to `err` otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chordlab::cli
