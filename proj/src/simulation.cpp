#include "amsel/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>

#include <omp.h>

#include "amsel/errors.hpp"

namespace amsel {

namespace {

enum Purpose : std::uint64_t { kInstance = 1, kFlips = 2, kPolicy = 3 };

/// Per-trial outputs laid out so any execution order fills the same slots.
struct TrialTable {
  std::size_t trials;
  std::size_t width;  // max_steps + 1
  std::vector<double> regret;
  std::vector<double> reward;

  TrialTable(std::size_t policies, std::size_t trials_in, std::size_t width_in)
      : trials(trials_in), width(width_in), regret(policies * trials_in * width_in), reward(policies * trials_in) {}

  void store(std::size_t policy, std::size_t trial, const TrialRecord& record) {
    double* row = &regret[(policy * trials + trial) * width];
    for (std::size_t t = 0; t < width; ++t) {
      row[t] = record.regret_at_step[std::min(t, record.regret_at_step.size() - 1)];
    }
    reward[policy * trials + trial] = record.total_heads;
  }
};

void run_cell(const ExperimentConfig& config, GittinsCache* gittins, TrialTable& table, std::size_t cell) {
  const std::size_t policy = cell / table.trials;
  const std::size_t trial = cell % table.trials;
  const auto& spec = config.policies[policy];
  auto streams = TrialStreams::derive(config.seed, trial, spec, config.instance.size());
  table.store(policy, trial, run_trial(spec, config.instance, std::move(streams), gittins));
}

ExperimentResult summarize(const ExperimentConfig& config, const TrialTable& table) {
  ExperimentResult result;
  std::vector<double> column(table.trials);
  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    PolicyResult out;
    out.policy = config.policies[p].name();
    for (std::size_t t = 0; t < table.width; ++t) {
      for (std::size_t trial = 0; trial < table.trials; ++trial) {
        column[trial] = table.regret[(p * table.trials + trial) * table.width + t];
      }
      const auto [mean, se] = mean_and_standard_error(column);
      out.steps.push_back({static_cast<int>(t), static_cast<int>(table.trials), mean, se});
    }
    const auto [reward, reward_se] =
        mean_and_standard_error(std::span<const double>(table.reward).subspan(p * table.trials, table.trials));
    out.mean_reward = reward;
    out.reward_standard_error = reward_se;
    result.policies.push_back(std::move(out));
  }
  return result;
}

}  // namespace

TrialStreams TrialStreams::derive(std::uint64_t seed, std::uint64_t trial, const PolicySpec& policy, std::size_t n) {
  TrialStreams streams{CounterRng(derive_key(seed, {trial, kInstance})),
                       CounterRng(derive_key(seed, {trial, kPolicy, label_hash(policy.name())})),
                       {}};
  streams.flips.reserve(n);
  for (std::size_t i = 0; i < n; ++i) streams.flips.emplace_back(derive_key(seed, {trial, kFlips, i}));
  return streams;
}

std::vector<double> sample_instance(std::span<const BetaParams> priors, CounterRng& rng) {
  if (priors.empty()) throw InvalidArgument("sample_instance needs at least one prior");
  std::vector<double> thetas;
  thetas.reserve(priors.size());
  for (const auto& p : priors) thetas.push_back(sample_beta(p, rng));
  return thetas;
}

TrialRecord run_trial(const PolicySpec& spec, const ProblemInstance& instance, TrialStreams streams,
                      GittinsCache* gittins) {
  instance.validate();
  if (streams.flips.size() != instance.size()) throw InvalidArgument("need one flip stream per coin");

  TrialRecord record;
  record.true_thetas = sample_instance(instance.priors, streams.instance);
  const double best_theta = *std::max_element(record.true_thetas.begin(), record.true_thetas.end());

  BeliefState state = instance.initial_state();
  Policy policy(spec, streams.policy, gittins);
  auto note_winner = [&] {
    const CoinIndex w = winner(state);
    record.winner_at_step.push_back(w);
    record.regret_at_step.push_back(best_theta - record.true_thetas[w]);
  };
  note_winner();

  while (any_affordable(state, instance.costs)) {
    CoinIndex coin = 0;
    try {
      coin = policy.choose(state, instance.costs);
    } catch (const NoAffordableCoin& e) {
      throw PolicyError(spec.name() + " gave up with budget left: " + e.what());
    }
    if (coin >= instance.size() || !affordable(state, instance.costs, coin)) {
      throw PolicyError(spec.name() + " chose an unaffordable coin");
    }
    const bool heads = streams.flips[coin].uniform() < record.true_thetas[coin];
    const Outcome outcome = heads ? Outcome::heads : Outcome::tails;
    state.record(coin, outcome, instance.costs[coin]);
    policy.observe(coin, outcome);
    record.history.push_back({static_cast<int>(record.history.size()) + 1, coin, outcome});
    record.total_heads += heads ? 1 : 0;
    note_winner();
  }
  return record;
}

void ExperimentConfig::validate() const {
  try {
    instance.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("instance", e.what());
  }
  if (policies.empty()) throw ConfigError("policies", "at least one policy is required");
  if (trials < 1) throw ConfigError("trials", "must be at least 1");
}

const PolicyResult& ExperimentResult::at(std::string_view policy) const {
  for (const auto& p : policies) {
    if (p.policy == policy) return p;
  }
  throw InvalidArgument("no result for policy '" + std::string(policy) + "'");
}

int max_steps(const ProblemInstance& instance) {
  return instance.budget / *std::min_element(instance.costs.begin(), instance.costs.end());
}

std::pair<double, double> mean_and_standard_error(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  const double mean = sum / n;
  if (values.size() < 2) return {mean, 0.0};
  double squares = 0.0;
  for (double v : values) squares += (v - mean) * (v - mean);
  return {mean, std::sqrt(squares / (n - 1.0) / n)};
}

ExperimentResult run_experiment_serial(const ExperimentConfig& config, GittinsCache* gittins) {
  config.validate();
  GittinsCache local;
  if (gittins == nullptr) gittins = &local;
  TrialTable table(config.policies.size(), static_cast<std::size_t>(config.trials),
                   static_cast<std::size_t>(max_steps(config.instance)) + 1);
  const std::size_t cells = config.policies.size() * table.trials;
  for (std::size_t cell = 0; cell < cells; ++cell) run_cell(config, gittins, table, cell);
  return summarize(config, table);
}

ExperimentResult run_experiment(const ExperimentConfig& config, GittinsCache* gittins, int threads) {
  config.validate();
  GittinsCache local;
  if (gittins == nullptr) gittins = &local;
  TrialTable table(config.policies.size(), static_cast<std::size_t>(config.trials),
                   static_cast<std::size_t>(max_steps(config.instance)) + 1);
  const auto cells = static_cast<std::int64_t>(config.policies.size() * table.trials);
  const int team = threads > 0 ? threads : omp_get_max_threads();

  std::exception_ptr failure;
  std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 8) num_threads(team)
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    try {
      run_cell(config, gittins, table, static_cast<std::size_t>(cell));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(config, table);
}

}  // namespace amsel
