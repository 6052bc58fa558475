#pragma once

namespace peakval {

/// CLI entry point (subcommands: gen | sdp | simulate | curves).
/// Exit codes: 0 success, 2 validation/usage error, 3 infeasible model,
/// 4 numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace peakval
