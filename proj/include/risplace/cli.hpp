#pragma once

#include <iosfwd>

namespace risplace::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kAnchorFailure = 1,
  kConfigError = 2,
  kRuntimeError = 3,
};

/// Entry point of `risplace`; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace risplace::cli
