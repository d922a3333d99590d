#include "amsel/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "amsel/errors.hpp"

namespace amsel {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError(key, "expected a number, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

BetaParams parse_prior(const std::string& key, const std::string& text) {
  const auto space = text.find_first_of(" \t");
  if (space == std::string::npos) throw ConfigError(key, "expected '<alpha1> <alpha2>', got '" + text + "'");
  const int heads = parse_number<int>(key, trim(text.substr(0, space)));
  const int tails = parse_number<int>(key, trim(text.substr(space)));
  if (heads < 1 || tails < 1) throw ConfigError(key, "Beta parameters must be positive integers");
  return BetaParams(heads, tails);
}

/// Parses the `<i>` of `prior.<i>` as a one-based coin index.
std::size_t coin_suffix(const std::string& key, std::size_t prefix, std::size_t n) {
  const auto index = parse_number<long long>(key, key.substr(prefix));
  if (index < 1 || static_cast<std::size_t>(index) > n) {
    throw ConfigError(key, "coin index out of range for n = " + std::to_string(n));
  }
  return static_cast<std::size_t>(index - 1);
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  std::map<std::string, std::string> instance;
  std::map<std::string, std::string> experiment;
  std::map<std::string, std::string>* section = nullptr;

  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text == "[instance]") {
        section = &instance;
      } else if (text == "[experiment]") {
        section = &experiment;
      } else {
        throw ConfigError(text, "unknown section on line " + std::to_string(number));
      }
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number), "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (section == nullptr) throw ConfigError(key, "key appears before any section");
    if (!section->emplace(key, value).second) throw ConfigError(key, "duplicate key");
  }

  auto take = [](std::map<std::string, std::string>& map, const std::string& key) -> std::optional<std::string> {
    auto it = map.find(key);
    if (it == map.end()) return std::nullopt;
    std::string value = it->second;
    map.erase(it);
    return value;
  };

  ExperimentConfig config;
  const auto n_text = take(instance, "n");
  if (!n_text) throw ConfigError("n", "missing required key in [instance]");
  const int n = parse_number<int>("n", *n_text);
  if (n < 1) throw ConfigError("n", "must be at least 1");
  const auto budget_text = take(instance, "budget");
  if (!budget_text) throw ConfigError("budget", "missing required key in [instance]");
  const int budget = parse_number<int>("budget", *budget_text);
  if (budget < 0) throw ConfigError("budget", "must be nonnegative");

  BetaParams prior;
  if (auto text = take(instance, "prior")) prior = parse_prior("prior", *text);
  int cost = 1;
  if (auto text = take(instance, "cost")) cost = parse_number<int>("cost", *text);
  if (cost < 1) throw ConfigError("cost", "must be a positive integer");

  std::vector<BetaParams> priors(static_cast<std::size_t>(n), prior);
  std::vector<int> costs(static_cast<std::size_t>(n), cost);
  for (const auto& [key, value] : instance) {
    if (key.starts_with("prior.")) {
      priors[coin_suffix(key, 6, priors.size())] = parse_prior(key, value);
    } else if (key.starts_with("cost.")) {
      const int c = parse_number<int>(key, value);
      if (c < 1) throw ConfigError(key, "must be a positive integer");
      costs[coin_suffix(key, 5, costs.size())] = c;
    } else {
      throw ConfigError(key, "unknown key in [instance]");
    }
  }
  config.instance = ProblemInstance(std::move(priors), std::move(costs), budget);

  if (auto text = take(experiment, "policies")) {
    std::string_view rest = *text;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) continue;
      try {
        config.policies.push_back(PolicySpec::parse(item));
      } catch (const InvalidArgument& e) {
        throw ConfigError("policies", e.what());
      }
    }
  }
  if (auto text = take(experiment, "trials")) {
    config.trials = parse_number<int>("trials", *text);
    if (config.trials < 1) throw ConfigError("trials", "must be at least 1");
  }
  if (auto text = take(experiment, "seed")) config.seed = parse_number<std::uint64_t>("seed", *text);
  if (auto text = take(experiment, "record_every_step")) {
    config.record_every_step = parse_bool("record_every_step", *text);
  }
  if (auto text = take(experiment, "report_reward")) config.report_reward = parse_bool("report_reward", *text);
  if (!experiment.empty()) throw ConfigError(experiment.begin()->first, "unknown key in [experiment]");
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
  return parse_config(in);
}

}  // namespace amsel
