#pragma once

// Command-line front end. Exit codes are a stable contract.

#include <iosfwd>

namespace anosov::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCertifiedFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitResourceCap = 3;

/// Runs one invocation; reports go to `out` (or --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anosov::cli
