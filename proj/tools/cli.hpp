#pragma once

#include <ostream>

namespace ris_sei::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one subcommand: simulate, stats, roc, threshold, detect, validate,
/// experiment or sweep. Returns 0 on success, 1 on a usage error and 2 on a
/// data error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ris_sei::cli
