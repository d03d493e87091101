#pragma once

#include <iosfwd>

namespace rssiloc::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kMalformedInput = 2,
  kEstimationFailure = 3,
  kIoFailure = 4,
};

/// Runs one command line (argv[0] is the program name). On failure writes a
/// machine-readable "error category=... code=..." line to `err`, followed
/// by a human-readable diagnostic line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rssiloc::cli
