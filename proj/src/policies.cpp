#include "amsel/policies.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <string>

#include "amsel/allocation.hpp"
#include "amsel/errors.hpp"
#include "amsel/solver.hpp"

namespace amsel {

namespace {

int cost_of(std::span<const int> costs, CoinIndex i) { return costs.empty() ? 1 : costs[i]; }

void require_affordable(const BeliefState& state, std::span<const int> costs) {
  if (!costs.empty() && costs.size() != state.size()) throw InvalidArgument("costs do not match coin count");
  if (!any_affordable(state, costs)) throw NoAffordableCoin("no coin is affordable with the remaining budget");
}

/// Lowest eligible index whose score ties the best eligible score.
template <typename Eligible, typename Score>
CoinIndex argmax_where(std::size_t n, Eligible&& eligible, Score&& score) {
  std::vector<std::optional<double>> values(n);
  double best = -1e300;
  for (CoinIndex i = 0; i < n; ++i) {
    if (!eligible(i)) continue;
    values[i] = score(i);
    best = std::max(best, *values[i]);
  }
  for (CoinIndex i = 0; i < n; ++i) {
    if (values[i] && ties_or_beats(*values[i], best)) return i;
  }
  throw NoAffordableCoin("no eligible coin");
}

template <typename Score>
CoinIndex argmax_affordable(const BeliefState& state, std::span<const int> costs, Score&& score) {
  require_affordable(state, costs);
  return argmax_where(
      state.size(), [&](CoinIndex i) { return affordable(state, costs, i); }, score);
}

bool parse_int(std::string_view text, int& out) {
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && end == text.data() + text.size();
}

bool parse_double(std::string_view text, double& out) {
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && end == text.data() + text.size();
}

}  // namespace

PolicySpec PolicySpec::parse(std::string_view text) {
  if (text == "round-robin") return {PolicyKind::round_robin};
  if (text == "random") return {PolicyKind::random};
  if (text == "biased-robin") return {PolicyKind::biased_robin};
  if (text == "scla") return {PolicyKind::scla};
  if (text == "gittins") return {PolicyKind::gittins};
  if (text.starts_with("greedy:")) {
    PolicySpec spec{PolicyKind::greedy};
    if (!parse_int(text.substr(7), spec.k) || spec.k < 1 || spec.k > kMaxGreedyLookahead) {
      throw InvalidArgument("greedy look-ahead must be an integer in [1, " + std::to_string(kMaxGreedyLookahead) +
                            "]: '" + std::string(text) + "'");
    }
    return spec;
  }
  if (text.starts_with("interval:")) {
    PolicySpec spec{PolicyKind::interval_estimation};
    if (!parse_double(text.substr(9), spec.gamma) || !(spec.gamma >= 0.0)) {
      throw InvalidArgument("interval gamma must be a nonnegative number: '" + std::string(text) + "'");
    }
    return spec;
  }
  throw InvalidArgument("unknown policy '" + std::string(text) + "'");
}

std::string PolicySpec::name() const {
  switch (kind) {
    case PolicyKind::round_robin:
      return "round-robin";
    case PolicyKind::random:
      return "random";
    case PolicyKind::greedy:
      return "greedy:" + std::to_string(k);
    case PolicyKind::biased_robin:
      return "biased-robin";
    case PolicyKind::scla:
      return "scla";
    case PolicyKind::interval_estimation: {
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "interval:%.17g", gamma);
      // Prefer the shortest representation that round-trips.
      for (int digits = 1; digits <= 17; ++digits) {
        char shorter[64];
        std::snprintf(shorter, sizeof shorter, "%.*g", digits, gamma);
        double back = 0.0;
        if (parse_double(shorter, back) && back == gamma) return std::string("interval:") + shorter;
      }
      return buffer;
    }
    case PolicyKind::gittins:
      return "gittins";
  }
  return "unknown";
}

bool PolicySpec::uses_data() const noexcept {
  return kind != PolicyKind::round_robin && kind != PolicyKind::random;
}

bool PolicySpec::uses_budget() const noexcept { return kind == PolicyKind::scla || kind == PolicyKind::gittins; }

CoinIndex choose_round_robin(int t, std::size_t n) {
  if (t < 1 || n < 1) throw InvalidArgument("round robin needs t >= 1 and n >= 1");
  return static_cast<CoinIndex>((t - 1) % static_cast<long long>(n));
}

CoinIndex choose_random(std::size_t n, CounterRng& rng) {
  if (n < 1) throw InvalidArgument("random choice needs n >= 1");
  return static_cast<CoinIndex>(rng.below(n));
}

CoinIndex choose_greedy_k(const BeliefState& state, int k, std::span<const int> costs) {
  if (k < 1 || k > kMaxGreedyLookahead) {
    throw InvalidArgument("greedy look-ahead must lie in [1, " + std::to_string(kMaxGreedyLookahead) + "]");
  }
  require_affordable(state, costs);
  const int unit = costs.empty() ? 1 : *std::min_element(costs.begin(), costs.end());
  const BeliefState horizon(std::vector<BetaParams>(state.posteriors().begin(), state.posteriors().end()),
                            std::min(k * unit, state.remaining_budget()));
  const auto values = first_flip_values(horizon, costs, SolverLimits{state.size(), k * unit});
  double best = -1e300;
  for (const auto& v : values) {
    if (v) best = std::max(best, *v);
  }
  for (CoinIndex i = 0; i < values.size(); ++i) {
    if (values[i] && ties_or_beats(*values[i], best)) return i;
  }
  // Cheapest coins exceed the shortened horizon; fall back to the first affordable coin.
  for (CoinIndex i = 0; i < state.size(); ++i) {
    if (affordable(state, costs, i)) return i;
  }
  throw NoAffordableCoin("no coin is affordable with the remaining budget");
}

CoinIndex choose_biased_robin(std::optional<Cursor> cursor, std::size_t n) {
  if (n < 1) throw InvalidArgument("biased robin needs n >= 1");
  if (!cursor) return 0;
  if (cursor->outcome == Outcome::heads) return cursor->coin;
  return (cursor->coin + 1) % n;
}

CoinIndex choose_scla(const BeliefState& state, std::span<const int> costs) {
  return argmax_affordable(state, costs, [&](CoinIndex i) {
    const int flips = state.remaining_budget() / cost_of(costs, i);
    return evaluate_allocation(state, Allocation::single(state.size(), i, flips));
  });
}

CoinIndex choose_interval_estimation(const BeliefState& state, double gamma, std::span<const int> costs) {
  auto score = [&](CoinIndex i) { return beta_mean(state[i]) + gamma * beta_std(state[i]); };
  // Without costs or budget there is nothing to filter on: score every coin.
  if (costs.empty() && state.remaining_budget() < 1) {
    return argmax_where(
        state.size(), [](CoinIndex) { return true; }, score);
  }
  return argmax_affordable(state, costs, score);
}

CoinIndex choose_gittins(const BeliefState& state, GittinsCache& cache, std::span<const int> costs) {
  const int s = state.remaining_budget();
  return argmax_affordable(state, costs, [&](CoinIndex i) { return cache.index(state[i], s); });
}

Policy::Policy(PolicySpec spec, CounterRng rng, GittinsCache* gittins)
    : spec_(spec), rng_(rng), gittins_(gittins) {
  if (spec_.kind == PolicyKind::gittins && gittins_ == nullptr) {
    own_cache_ = std::make_unique<GittinsCache>();
    gittins_ = own_cache_.get();
  }
}

CoinIndex Policy::next_affordable(CoinIndex start, const BeliefState& state, std::span<const int> costs) const {
  const std::size_t n = state.size();
  for (std::size_t step = 0; step < n; ++step) {
    const CoinIndex i = (start + step) % n;
    if (affordable(state, costs, i)) return i;
  }
  throw NoAffordableCoin("no coin is affordable with the remaining budget");
}

CoinIndex Policy::choose(const BeliefState& state, std::span<const int> costs) {
  require_affordable(state, costs);
  const std::size_t n = state.size();
  switch (spec_.kind) {
    case PolicyKind::round_robin:
      return next_affordable(cursor_ ? (cursor_->coin + 1) % n : 0, state, costs);
    case PolicyKind::biased_robin:
      return next_affordable(choose_biased_robin(cursor_, n), state, costs);
    case PolicyKind::random: {
      std::vector<CoinIndex> options;
      for (CoinIndex i = 0; i < n; ++i) {
        if (affordable(state, costs, i)) options.push_back(i);
      }
      return options[choose_random(options.size(), rng_)];
    }
    case PolicyKind::greedy:
      return choose_greedy_k(state, spec_.k, costs);
    case PolicyKind::scla:
      return choose_scla(state, costs);
    case PolicyKind::interval_estimation:
      return choose_interval_estimation(state, spec_.gamma, costs);
    case PolicyKind::gittins:
      return choose_gittins(state, *gittins_, costs);
  }
  throw PolicyError("unknown policy kind");
}

void Policy::observe(CoinIndex coin, Outcome outcome) {
  cursor_ = Cursor{coin, outcome};
  ++time_;
}

}  // namespace amsel
