#pragma once

#include <iosfwd>

namespace nfs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one sub-command: generate, train, describe, eval, curves.
/// Failures print a single "error: usage: ..." or "error: data: ..." line on `err`
/// (usage errors are followed by the help text) and return kExitUsage / kExitData.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nfs::cli
