#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace voabranch::cli {

enum ExitCode { kSuccess = 0, kVerificationFailed = 1, kUsage = 2 };

/// Runs one subcommand (decompose, cosets, branch, conformal, theta) and writes
/// its document to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace voabranch::cli
