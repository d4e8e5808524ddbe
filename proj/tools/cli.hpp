#pragma once

#include <iosfwd>

namespace photon_slh::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,          // unreadable/malformed input, bad arguments
  kConditionFailure = 2, // model fails the single-photon linearity conditions
  kGridError = 3,        // time grid too short or too coarse
  kSingularLoop = 4,     // feedback loop with 1 - S22 = 0
};

// Entry point shared by the executable and the tests. `out` receives primary
// output when no --out file is given, `err` diagnostics and sidecars.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace photon_slh::cli
