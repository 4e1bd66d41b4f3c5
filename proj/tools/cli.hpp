#pragma once

#include <iosfwd>

namespace qcdist::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,  ///< theory check failure or unexpected library error
    kIoError = 2,      ///< unreadable/unwritable file, malformed mesh file
    kValidation = 3,   ///< connectivity mismatch, degenerate faces, wrong topology
    kSolverError = 4,
    kUsage = 64,       ///< bad command line
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcdist::cli
