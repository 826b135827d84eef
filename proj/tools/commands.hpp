#pragma once

#include <iosfwd>

namespace sievekit::cli {

/// Exit statuses.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_data = 2,
    exit_training = 3,
};

/// Runs the command line `argv` with the given standard streams and returns
/// the process exit status.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace sievekit::cli
