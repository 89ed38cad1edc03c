#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wavrep::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one command; the JSON report goes to `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wavrep::cli
