#include "amsel/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "amsel/allocation.hpp"
#include "amsel/config.hpp"
#include "amsel/errors.hpp"
#include "amsel/gittins.hpp"
#include "amsel/solver.hpp"

namespace amsel {

namespace {

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string gittins_cache;
  int threads = 0;
};

std::vector<int> parse_alloc(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("--alloc", "expected comma-separated nonnegative integers, got '" + text + "'");
    }
  }
  return out;
}

int cmd_simulate(const std::string& path, const GlobalOptions& global, std::ostream& out) {
  ExperimentConfig config = load_config(path);
  if (global.seed) config.seed = *global.seed;
  config.validate();
  GittinsCache cache;
  if (!global.gittins_cache.empty()) cache.load(global.gittins_cache);
  const auto result = run_experiment(config, &cache, global.threads);
  if (!global.gittins_cache.empty()) cache.save(global.gittins_cache);
  write_simulation_csv(config, result, out);
  return kExitOk;
}

int cmd_optimal(const std::string& path, std::ostream& out) {
  const ExperimentConfig config = load_config(path);
  const auto result = solve_optimal(config.instance);
  out << to_text(result.tree);
  if (result.tree.is_stop()) {
    out << "first action: stop\n";
  } else {
    out << "first action: coin " << result.tree.coin() + 1 << '\n';
  }
  out << "value=" << format_number(result.value) << " regret=" << format_number(result.regret) << '\n';
  return kExitOk;
}

int cmd_closed_form(int n, int a, std::ostream& out) {
  if (n < 1) throw ConfigError("--n", "must be at least 1");
  if (a < 0) throw ConfigError("--a", "must be nonnegative");
  out << format_number(uniform_equal_allocation_regret(n, a)) << '\n';
  return kExitOk;
}

int cmd_gittins_table(int max_sum, int s, const GlobalOptions& global, std::ostream& out) {
  if (s < 1) throw ConfigError("--s", "must be at least 1");
  if (max_sum < 2) throw ConfigError("--max-sum", "must be at least 2");
  GittinsCache cache;
  if (!global.gittins_cache.empty()) cache.load(global.gittins_cache);
  out << "alpha1,alpha2,index\n";
  for (int a1 = 1; a1 < max_sum; ++a1) {
    for (int a2 = 1; a1 + a2 <= max_sum; ++a2) {
      out << a1 << ',' << a2 << ',' << format_number(cache.index(BetaParams(a1, a2), s)) << '\n';
    }
  }
  if (!global.gittins_cache.empty()) cache.save(global.gittins_cache);
  return kExitOk;
}

int cmd_eval_alloc(const std::string& path, const std::string& alloc_text, std::ostream& out) {
  const ExperimentConfig config = load_config(path);
  const Allocation alloc{parse_alloc(alloc_text)};
  if (alloc.flips_per_coin.size() != config.instance.size()) {
    throw ConfigError("--alloc", "expected " + std::to_string(config.instance.size()) + " entries");
  }
  const BeliefState state = config.instance.initial_state();
  double value = 0.0;
  try {
    value = evaluate_allocation(state, alloc, config.instance.costs);
  } catch (const BudgetExceeded& e) {
    throw ConfigError("--alloc", e.what());
  }
  out << "value=" << format_number(value) << " regret=" << format_number(std::max(0.0, expected_theta_max_auto(state) - value))
      << '\n';
  return kExitOk;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::string format_number(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.9g", x);
  return buffer;
}

void write_simulation_csv(const ExperimentConfig& config, const ExperimentResult& result, std::ostream& out) {
  out << "policy,t,trials,mean_regret,stderr" << (config.report_reward ? ",mean_reward" : "") << '\n';
  for (const auto& policy : result.policies) {
    const std::size_t first = config.record_every_step ? 0 : policy.steps.size() - 1;
    for (std::size_t i = first; i < policy.steps.size(); ++i) {
      const auto& step = policy.steps[i];
      out << policy.policy << ',' << step.t << ',' << step.trials << ',' << format_number(step.mean_regret) << ','
          << format_number(step.standard_error);
      if (config.report_reward) out << ',' << format_number(policy.mean_reward);
      out << '\n';
    }
  }
}

ExperimentResult read_simulation_csv(std::istream& in) {
  ExperimentResult result;
  std::string line;
  if (!std::getline(in, line)) throw Error("empty simulation CSV");
  const auto header = split_csv_line(line);
  if (header.size() < 5 || header[0] != "policy") throw Error("unexpected simulation CSV header: " + line);
  const bool has_reward = header.size() == 6;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw Error("ragged simulation CSV row: " + line);
    if (result.policies.empty() || result.policies.back().policy != fields[0]) {
      result.policies.push_back(PolicyResult{fields[0], {}, 0.0, 0.0});
    }
    auto& policy = result.policies.back();
    policy.steps.push_back({std::stoi(fields[1]), std::stoi(fields[2]), std::stod(fields[3]), std::stod(fields[4])});
    if (has_reward) policy.mean_reward = std::stod(fields[5]);
  }
  return result;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budgeted active model selection: policies, exact solver and Monte Carlo harness", "amsel"};
  app.require_subcommand(1);

  GlobalOptions global;
  std::uint64_t seed = 0;
  auto* seed_option = app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--gittins-cache", global.gittins_cache, "CSV file caching Gittins indices");
  app.add_option("--threads", global.threads, "Worker threads (speed only)")->check(CLI::NonNegativeNumber);

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo comparison of policies; CSV on stdout");
  simulate->add_option("config", config_path, "Config file")->required();

  auto* optimal = app.add_subcommand("optimal", "Exact optimal strategy tree and its regret");
  optimal->add_option("config", config_path, "Config file")->required();

  int n = 0;
  int a = 0;
  auto* closed_form = app.add_subcommand("closed-form", "Regret of equal allocation under uniform priors");
  closed_form->add_option("--n", n, "Number of coins")->required();
  closed_form->add_option("--a", a, "Flips per coin")->required();

  int max_sum = 0;
  int s = 0;
  auto* gittins_table = app.add_subcommand("gittins-table", "Gittins indices at discount 1 - 1/s");
  gittins_table->add_option("--max-sum", max_sum, "Largest alpha1 + alpha2")->required();
  gittins_table->add_option("--s", s, "Remaining budget")->required();

  std::string alloc_text;
  auto* eval_alloc = app.add_subcommand("eval-alloc", "Expected highest mean of an allocation");
  eval_alloc->add_option("config", config_path, "Config file")->required();
  eval_alloc->add_option("--alloc", alloc_text, "Flips per coin, comma separated")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv{"amsel"};
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  if (seed_option->count() > 0) global.seed = seed;

  try {
    if (*simulate) return cmd_simulate(config_path, global, out);
    if (*optimal) return cmd_optimal(config_path, out);
    if (*closed_form) return cmd_closed_form(n, a, out);
    if (*gittins_table) return cmd_gittins_table(max_sum, s, global, out);
    if (*eval_alloc) return cmd_eval_alloc(config_path, alloc_text, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const InstanceTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitTooLarge;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace amsel
