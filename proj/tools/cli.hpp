#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bexp::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitThresholdFailure = 2;

// Runs the command line `args` (args[0] is the program name). Normal output
// goes to `out`, diagnostics and the config echo to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bexp::cli
