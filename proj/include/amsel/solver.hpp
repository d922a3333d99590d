#pragma once

#include <optional>
#include <span>
#include <vector>

#include "amsel/belief.hpp"
#include "amsel/strategy_tree.hpp"

namespace amsel {

struct SolverLimits {
  std::size_t max_coins = 10;
  int max_budget = 12;
};

struct SolveResult {
  StrategyTree tree = StrategyTree::stop(0);
  double value = 0.0;   ///< E(mu_max | s*)
  double regret = 0.0;  ///< E(Theta_max) - value
  std::size_t states_expanded = 0;
  /// Value of flipping coin i first and then continuing optimally;
  /// empty for coins the budget cannot pay for.
  std::vector<std::optional<double>> first_flip_values;
};

/// Exact optimal strategy by memoized backward induction over belief
/// states, spending at most root.remaining_budget(). Ties go to the lowest
/// coin index; a node whose best flip cannot beat stopping becomes a stop
/// leaf. Empty `costs` means unit costs. Throws InstanceTooLarge.
SolveResult solve_optimal(const BeliefState& root, std::span<const int> costs = {}, SolverLimits limits = {});
SolveResult solve_optimal(const ProblemInstance& instance, SolverLimits limits = {});

/// The root coin of an optimal strategy, or nullopt when it stops at once.
std::optional<CoinIndex> first_action(const BeliefState& root, std::span<const int> costs = {},
                                      SolverLimits limits = {});

/// first_flip_values without building the tree or computing E(Theta_max).
std::vector<std::optional<double>> first_flip_values(const BeliefState& root, std::span<const int> costs = {},
                                                     SolverLimits limits = {});

/// Relative tolerance used for every argmax tie in the library.
constexpr double kTieTolerance = 1e-12;

inline bool ties_or_beats(double value, double best) {
  const double scale = best < 0 ? -best : best;
  return value >= best - kTieTolerance * (scale > 1.0 ? scale : 1.0);
}

}  // namespace amsel
