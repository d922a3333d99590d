#pragma once

#include <filesystem>
#include <istream>

#include "amsel/simulation.hpp"

namespace amsel {

/// Line-oriented `key = value` text with `[instance]` and `[experiment]`
/// sections and `#` comments:
///
///   [instance]
///   n = 3
///   prior = 1 1        # default for every coin
///   prior.2 = 5 2      # one-based per-coin override
///   cost = 1
///   cost.3 = 2
///   budget = 4
///
///   [experiment]
///   policies = round-robin, biased-robin, interval:1.96
///   trials = 1000
///   seed = 7
///   record_every_step = true
///   report_reward = false
///
/// Throws ConfigError naming the offending key. `policies` may be empty;
/// commands that simulate check for it.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace amsel
