#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fmlab::cli {

/// Exit codes: 0 pass, 1 usage or parse error, 2 assertion or numeric failure.
enum ExitCode : int { kPass = 0, kUsage = 1, kFailure = 2 };

/// Runs the command line (argv[0] is the program name). Reports go to --out when
/// given (written atomically), otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace fmlab::cli
