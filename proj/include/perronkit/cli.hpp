#pragma once

#include <iosfwd>

namespace perronkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitNotStrong = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command line. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace perronkit::cli
