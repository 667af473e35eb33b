#pragma once

#include <iosfwd>

namespace cfmm::cli {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;     // bad arguments or domain errors
inline constexpr int kExitMismatch = 3;  // verification disagrees with claims

/// Parses argv and runs one command. Results go to `out` (or the --out
/// file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cfmm::cli
