#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swm::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kNonConvergence = 3 };

/// Runs one invocation; args exclude the program name. Reports go to `out` unless --out
/// names a file, diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swm::cli
