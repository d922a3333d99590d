#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amsel/belief.hpp"
#include "amsel/gittins.hpp"
#include "amsel/policies.hpp"
#include "amsel/rng.hpp"

namespace amsel {

struct TrialRecord {
  std::vector<double> true_thetas;
  std::vector<FlipRecord> history;
  /// Entry t: winner (and its true-theta regret) if the trial stopped after t flips.
  std::vector<CoinIndex> winner_at_step;
  std::vector<double> regret_at_step;
  int total_heads = 0;
};

/// The random streams one trial draws from. Instance and flip streams
/// depend only on (seed, trial), so every policy faces the same coins and
/// the same per-coin outcome sequences; the policy stream is keyed by the
/// policy name as well.
struct TrialStreams {
  CounterRng instance;
  CounterRng policy;
  std::vector<CounterRng> flips;  ///< one per coin

  static TrialStreams derive(std::uint64_t seed, std::uint64_t trial, const PolicySpec& policy, std::size_t n);
};

std::vector<double> sample_instance(std::span<const BetaParams> priors, CounterRng& rng);

/// Samples the true head probabilities, then lets the policy flip until no
/// coin is affordable. Throws PolicyError if the policy misbehaves.
TrialRecord run_trial(const PolicySpec& policy, const ProblemInstance& instance, TrialStreams streams,
                      GittinsCache* gittins = nullptr);

struct ExperimentConfig {
  ProblemInstance instance;
  std::vector<PolicySpec> policies;
  int trials = 1000;
  std::uint64_t seed = 0;
  bool record_every_step = true;
  bool report_reward = false;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct StepStatistics {
  int t = 0;
  int trials = 0;
  double mean_regret = 0.0;
  double standard_error = 0.0;
};

struct PolicyResult {
  std::string policy;
  std::vector<StepStatistics> steps;  ///< t = 0..max_steps
  double mean_reward = 0.0;           ///< heads observed during the trial
  double reward_standard_error = 0.0;
};

struct ExperimentResult {
  std::vector<PolicyResult> policies;

  const PolicyResult& at(std::string_view policy) const;
};

/// Most flips any trial can make: budget / cheapest cost. Trials that stop
/// earlier keep their final winner for the remaining steps.
int max_steps(const ProblemInstance& instance);

/// OpenMP kernel over (policy, trial) pairs. `threads` = 0 uses the runtime
/// default. Results are bit-identical to run_experiment_serial.
ExperimentResult run_experiment(const ExperimentConfig& config, GittinsCache* gittins = nullptr, int threads = 0);

/// Single-threaded reference implementation.
ExperimentResult run_experiment_serial(const ExperimentConfig& config, GittinsCache* gittins = nullptr);

/// mean and standard error (sample stddev / sqrt(n); 0 for n = 1), summed in index order.
std::pair<double, double> mean_and_standard_error(std::span<const double> values);

}  // namespace amsel
