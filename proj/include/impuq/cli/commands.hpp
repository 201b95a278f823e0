#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace impuq::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kInternal = 1, kInvalidInput = 2 };

/// Runs the tool with `args` (program name excluded). Human-readable tables
/// go to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace impuq::cli
