#pragma once

#include <iosfwd>

namespace dholo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `dholo` tool. Subcommands: verify, kernel,
/// reconstruct, converge, norms. Returns 0 on success, 1 when a check
/// fails and 2 for usage or configuration errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dholo
