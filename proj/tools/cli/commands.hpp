#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadrep::cli {

// Exit codes of the quadrep tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMathFailure = 1;  // a counterexample or identity mismatch was found
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInterrupted = 130;

// Runs one invocation. args[0] is the program name. Report output goes to
// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// SIGINT/SIGTERM make a running verify stop after the current shard.
void install_signal_handlers();

}  // namespace quadrep::cli
