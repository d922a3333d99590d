#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "amsel/belief.hpp"

namespace amsel {

/// Contingent flip plan: either stop and declare a winner, or flip a coin
/// and continue with one subtree per outcome. Immutable; subtrees are shared.
class StrategyTree {
 public:
  static StrategyTree stop(CoinIndex winner);
  static StrategyTree flip(CoinIndex coin, StrategyTree on_heads, StrategyTree on_tails);

  bool is_stop() const noexcept;
  /// The stopped winner, or the coin flipped at this node.
  CoinIndex coin() const noexcept;
  const StrategyTree& on_heads() const;
  const StrategyTree& on_tails() const;

  std::size_t leaf_count() const;
  std::size_t depth() const;

  friend bool operator==(const StrategyTree& a, const StrategyTree& b);

 private:
  struct Node;
  explicit StrategyTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Line-indented text form, coins printed one-based:
///
///   flip 1
///     H: flip 1
///       H: stop 1
///       T: stop 1
///     T: stop 2
std::string to_text(const StrategyTree& tree);

/// Inverse of to_text. Throws MalformedTree.
StrategyTree parse_strategy_tree(std::string_view text);

struct StrategyEvaluation {
  double expected_highest_mean = 0.0;  ///< sum_j p_j * mean of leaf winner
  double regret = 0.0;                 ///< sum_j p_j * (E(Theta_max | leaf j) - mean of leaf winner)
  double regret_from_root = 0.0;       ///< E(Theta_max | root) - expected_highest_mean
};

/// Walks every root-to-leaf path with predictive branch probabilities.
/// Throws MalformedTree if a branch overspends or names an unknown coin.
/// Empty `costs` means unit costs.
StrategyEvaluation evaluate_strategy(const StrategyTree& tree, const BeliefState& root,
                                     std::span<const int> costs = {});

/// Regret(s) = sum over leaves of p_j r_j.
double strategy_regret(const StrategyTree& tree, const BeliefState& root, std::span<const int> costs = {});

}  // namespace amsel
