#pragma once

#include <iosfwd>

namespace tpc {

// Exit codes of the `tpc` command.
enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 1,
    kExitOutOfScope = 2,
    kExitSweepFailure = 3,
    kExitNotOptimal = 4,
};

// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tpc
