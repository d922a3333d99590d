#include "amsel/solver.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "amsel/errors.hpp"

namespace amsel {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::int32_t>& key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : key) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

class Solver {
 public:
  Solver(std::span<const int> costs) : costs_(costs) {}

  int cost(CoinIndex i) const { return costs_.empty() ? 1 : costs_[i]; }

  /// V(state) = max(mu_max, max_i [p V(heads) + (1 - p) V(tails)]).
  double value(const BeliefState& state) {
    auto key = canonical_key(state);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ++expanded_;
    double best = max_mean(state);
    for (CoinIndex i = 0; i < state.size(); ++i) {
      if (auto q = flip_value(state, i)) best = std::max(best, *q);
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

  std::optional<double> flip_value(const BeliefState& state, CoinIndex i) {
    if (!affordable(state, costs_, i)) return std::nullopt;
    const double p = beta_mean(state[i]);
    return p * value(update(state, i, Outcome::heads, cost(i))) +
           (1.0 - p) * value(update(state, i, Outcome::tails, cost(i)));
  }

  std::vector<std::optional<double>> root_values(const BeliefState& state) {
    std::vector<std::optional<double>> out(state.size());
    for (CoinIndex i = 0; i < state.size(); ++i) out[i] = flip_value(state, i);
    return out;
  }

  StrategyTree build(const BeliefState& state) {
    const auto q = root_values(state);
    const double stop_value = max_mean(state);
    std::optional<CoinIndex> choice;
    double best = stop_value;
    for (CoinIndex i = 0; i < q.size(); ++i) {
      if (q[i] && *q[i] > best) best = *q[i];
    }
    // A flip that only ties stopping is vacuous: emit a leaf instead.
    if (best > stop_value && !ties_or_beats(stop_value, best)) {
      for (CoinIndex i = 0; i < q.size() && !choice; ++i) {
        if (q[i] && ties_or_beats(*q[i], best)) choice = i;
      }
    }
    if (!choice) return StrategyTree::stop(winner(state));
    const CoinIndex c = *choice;
    return StrategyTree::flip(c, build(update(state, c, Outcome::heads, cost(c))),
                              build(update(state, c, Outcome::tails, cost(c))));
  }

  std::size_t expanded() const { return expanded_; }

 private:
  /// V depends only on the multiset of (posterior, cost) pairs and the budget.
  std::vector<std::int32_t> canonical_key(const BeliefState& state) const {
    std::vector<std::array<std::int32_t, 3>> coins(state.size());
    for (CoinIndex i = 0; i < state.size(); ++i) {
      coins[i] = {state[i].alpha_heads, state[i].alpha_tails, cost(i)};
    }
    std::sort(coins.begin(), coins.end());
    std::vector<std::int32_t> key;
    key.reserve(3 * coins.size() + 1);
    for (const auto& c : coins) key.insert(key.end(), c.begin(), c.end());
    key.push_back(state.remaining_budget());
    return key;
  }

  std::span<const int> costs_;
  std::unordered_map<std::vector<std::int32_t>, double, KeyHash> memo_;
  std::size_t expanded_ = 0;
};

void check_limits(const BeliefState& root, std::span<const int> costs, SolverLimits limits) {
  if (!costs.empty() && costs.size() != root.size()) throw InvalidArgument("costs do not match coin count");
  for (int c : costs) {
    if (c < 1) throw InvalidArgument("coin costs must be positive");
  }
  if (root.size() > limits.max_coins) {
    throw InstanceTooLarge(std::to_string(root.size()) + " coins exceed the solver cap of " +
                           std::to_string(limits.max_coins));
  }
  if (root.remaining_budget() > limits.max_budget) {
    throw InstanceTooLarge("budget " + std::to_string(root.remaining_budget()) + " exceeds the solver cap of " +
                           std::to_string(limits.max_budget));
  }
}

}  // namespace

SolveResult solve_optimal(const BeliefState& root, std::span<const int> costs, SolverLimits limits) {
  check_limits(root, costs, limits);
  Solver solver(costs);
  SolveResult result;
  result.value = solver.value(root);
  result.first_flip_values = solver.root_values(root);
  result.tree = solver.build(root);
  result.states_expanded = solver.expanded();
  result.regret = std::max(0.0, expected_theta_max_auto(root) - result.value);
  return result;
}

SolveResult solve_optimal(const ProblemInstance& instance, SolverLimits limits) {
  return solve_optimal(instance.initial_state(), instance.costs, limits);
}

std::optional<CoinIndex> first_action(const BeliefState& root, std::span<const int> costs, SolverLimits limits) {
  const auto tree = solve_optimal(root, costs, limits).tree;
  if (tree.is_stop()) return std::nullopt;
  return tree.coin();
}

std::vector<std::optional<double>> first_flip_values(const BeliefState& root, std::span<const int> costs,
                                                     SolverLimits limits) {
  check_limits(root, costs, limits);
  Solver solver(costs);
  return solver.root_values(root);
}

}  // namespace amsel
