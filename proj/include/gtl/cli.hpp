#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtl {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2 };

/// Runs the command line `args` (program name excluded). Exit 0 means valid, verified
/// or done; 1 means falsifiable or failed verification; 2 means bad usage or input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gtl
