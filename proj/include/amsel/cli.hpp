#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "amsel/simulation.hpp"

namespace amsel {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitBadInput = 2, kExitTooLarge = 3 };

/// Entry point of the `amsel` tool. `args` excludes the program name.
/// Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 9 significant digits, lowercase exponent when |x| < 1e-4.
std::string format_number(double x);

/// CSV produced by `simulate`.
void write_simulation_csv(const ExperimentConfig& config, const ExperimentResult& result, std::ostream& out);

/// Inverse of write_simulation_csv at printed precision.
ExperimentResult read_simulation_csv(std::istream& in);

}  // namespace amsel
