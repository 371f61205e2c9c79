#pragma once

#include <ostream>

namespace listhyp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitOracleMismatch = 4;

/// LISTHYP_THREADS when set to a positive integer, otherwise the hardware concurrency.
unsigned worker_count();

/// Entry point of the listhyp tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace listhyp::cli
