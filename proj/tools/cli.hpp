#pragma once

#include <ostream>

namespace interlace::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kSemantic = 3,
  kCheckFailed = 4,
};

// Runs the command line; the canonical polynomial (or command output) goes
// to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace interlace::cli
