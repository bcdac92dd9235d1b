#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace disturbsim::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitInternal = 3 };

/// Runs one command line (without the program name). Reports go to `out` unless `-o`
/// names a file; diagnostics go to `err` as `E:<code>:<message>`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, char** argv);

}  // namespace disturbsim::cli
