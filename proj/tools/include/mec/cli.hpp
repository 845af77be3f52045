#pragma once

#include <iosfwd>

namespace mec::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDataError = 2,
    kOod = 3,
};

/// Entry point of the `mec` tool. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mec::cli
