#pragma once

#include <iosfwd>

namespace decaycert::cli {

/// Exit codes of every subcommand.
enum ExitCode : int {
  kPass = 0,
  kViolation = 1,  // a check failed, or an input/usage error
  kRefused = 2,    // delta <= 0: the decay certificate does not apply
};

/// Entry point of the `decaycert` tool. Reports go to `out` unless
/// --output names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace decaycert::cli
