#pragma once

#include <iosfwd>

namespace nullag::cli {

/// Exit codes: 0 when every verdict passes, 2 for a verification failure,
/// 3 for an input error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 2;
inline constexpr int kExitInputError = 3;

/// Runs the command line tool with the given arguments (argv[0] is the
/// program name). Reports go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nullag::cli
