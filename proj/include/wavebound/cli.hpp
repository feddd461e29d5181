// cli.hpp -- command-line entry point (simulate | bound | optimize | pareto).
#ifndef WAVEBOUND_CLI_HPP
#define WAVEBOUND_CLI_HPP

namespace wavebound::cli {

/// Runs the CLI. Exit codes: 0 success, 2 schema violation, 3 IO or size
/// mismatch, 4 solver failure.
int run(int argc, const char* const* argv);

}  // namespace wavebound::cli

#endif
