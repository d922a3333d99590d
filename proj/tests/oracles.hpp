#pragma once

// Brute-force reference computations used only by the tests. Each one
// takes a different route from the library code it checks.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "amsel/belief.hpp"
#include "amsel/strategy_tree.hpp"

namespace amsel::oracle {

/// Gauss-Legendre nodes and weights on [0, 1] by Newton iteration.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int points) {
  std::vector<double> x(points), w(points);
  for (int i = 0; i < points; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (points == 1) p0 = 1.0, p1 = z;
      dp = points * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (1.0 - z);
    w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// Unnormalised Beta density evaluated directly from the definition.
inline double density(double t, BetaParams p) {
  const double norm = std::tgamma(p.total()) / (std::tgamma(p.alpha_heads) * std::tgamma(p.alpha_tails));
  return norm * std::pow(t, p.alpha_heads - 1) * std::pow(1.0 - t, p.alpha_tails - 1);
}

/// E(max(T1, T2)) by 2-D quadrature of max(t1, t2) w1 w2, splitting the
/// square along the diagonal so each piece is a polynomial.
inline double expected_max_2d(BetaParams a, BetaParams b, int points = 40) {
  const auto [x, w] = gauss_legendre(points);
  double total = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t1 = x[i];
    double below = 0.0;  // t2 in [0, t1]: max is t1
    double above = 0.0;  // t2 in [t1, 1]: max is t2
    for (int j = 0; j < points; ++j) {
      const double lo = t1 * x[j];
      below += w[j] * t1 * t1 * density(lo, b);
      const double hi = t1 + (1.0 - t1) * x[j];
      above += w[j] * (1.0 - t1) * hi * density(hi, b);
    }
    total += w[i] * density(t1, a) * (below + above);
  }
  return total;
}

/// E(max Theta_i) by 1-D quadrature of 1 - prod F_i with F_i integrated
/// from the density by nested Gauss-Legendre.
inline double expected_max_1d(const std::vector<BetaParams>& coins, int points = 60) {
  const auto [x, w] = gauss_legendre(points);
  double total = 0.0;
  for (int i = 0; i < points; ++i) {
    double prod = 1.0;
    for (const auto& p : coins) {
      double cdf = 0.0;
      for (int j = 0; j < points; ++j) cdf += w[j] * x[i] * density(x[i] * x[j], p);
      prod *= cdf;
    }
    total += w[i] * (1.0 - prod);
  }
  return total;
}

/// E(mu_max | alloc) by enumerating every outcome sequence of the flips,
/// done coin by coin, with sequential predictive probabilities.
inline double allocation_by_enumeration(const BeliefState& state, const std::vector<int>& alloc) {
  std::vector<CoinIndex> order;
  for (CoinIndex i = 0; i < alloc.size(); ++i) {
    for (int k = 0; k < alloc[i]; ++k) order.push_back(i);
  }
  std::function<double(std::size_t, std::vector<BetaParams>, double)> go =
      [&](std::size_t step, std::vector<BetaParams> post, double prob) -> double {
    if (step == order.size()) {
      double best = 0.0;
      for (const auto& p : post) best = std::max(best, static_cast<double>(p.alpha_heads) / p.total());
      return prob * best;
    }
    const CoinIndex c = order[step];
    const double ph = static_cast<double>(post[c].alpha_heads) / post[c].total();
    auto heads = post;
    heads[c].alpha_heads++;
    auto tails = post;
    tails[c].alpha_tails++;
    return go(step + 1, heads, prob * ph) + go(step + 1, tails, prob * (1.0 - ph));
  };
  return go(0, {state.posteriors().begin(), state.posteriors().end()}, 1.0);
}

struct PathSums {
  double highest_mean = 0.0;  ///< sum_j p_j mu_max(leaf)
  double theta_max = 0.0;     ///< sum_j p_j E(Theta_max | leaf)
  double probability = 0.0;   ///< sum_j p_j
};

/// Walks every outcome path of a tree; leaf E(Theta_max) via `e_max`.
inline PathSums path_sums(const StrategyTree& tree, const BeliefState& root, std::vector<int> costs,
                          const std::function<double(const BeliefState&)>& e_max) {
  PathSums sums;
  std::function<void(const StrategyTree&, std::vector<BetaParams>, double)> go =
      [&](const StrategyTree& node, std::vector<BetaParams> post, double prob) {
        if (node.is_stop()) {
          double best = 0.0;
          for (const auto& p : post) best = std::max(best, static_cast<double>(p.alpha_heads) / p.total());
          sums.highest_mean += prob * best;
          sums.theta_max += prob * e_max(BeliefState(post, 0));
          sums.probability += prob;
          return;
        }
        const CoinIndex c = node.coin();
        const double ph = static_cast<double>(post[c].alpha_heads) / post[c].total();
        auto heads = post;
        heads[c].alpha_heads++;
        auto tails = post;
        tails[c].alpha_tails++;
        go(node.on_heads(), heads, prob * ph);
        go(node.on_tails(), tails, prob * (1.0 - ph));
      };
  (void)costs;
  go(tree, {root.posteriors().begin(), root.posteriors().end()}, 1.0);
  return sums;
}

/// Every deterministic budget-respecting strategy tree from `state`.
/// Leaves declare the lowest-index highest-mean coin.
inline std::vector<StrategyTree> all_trees(const BeliefState& state, const std::vector<int>& costs) {
  std::vector<StrategyTree> out{StrategyTree::stop(winner(state))};
  for (CoinIndex c = 0; c < state.size(); ++c) {
    if (costs[c] > state.remaining_budget()) continue;
    const auto heads = all_trees(update(state, c, Outcome::heads, costs[c]), costs);
    const auto tails = all_trees(update(state, c, Outcome::tails, costs[c]), costs);
    for (const auto& h : heads) {
      for (const auto& t : tails) out.push_back(StrategyTree::flip(c, h, t));
    }
  }
  return out;
}

/// A random budget-respecting tree; stops with probability `stop_chance`
/// at every node that could still flip.
template <typename Rng>
StrategyTree random_tree(const BeliefState& state, const std::vector<int>& costs, Rng& rng,
                         double stop_chance = 0.2) {
  std::vector<CoinIndex> options;
  for (CoinIndex c = 0; c < state.size(); ++c) {
    if (costs[c] <= state.remaining_budget()) options.push_back(c);
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (options.empty() || u(rng) < stop_chance) return StrategyTree::stop(winner(state));
  const CoinIndex c = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
  return StrategyTree::flip(c, random_tree(update(state, c, Outcome::heads, costs[c]), costs, rng, stop_chance),
                            random_tree(update(state, c, Outcome::tails, costs[c]), costs, rng, stop_chance));
}

/// Gittins index by calibration on a lambda grid: value iteration of the
/// retirement problem to a fixed horizon, binary-searched over grid points.
inline double gittins_grid(BetaParams p, double beta, int horizon = 64, double step = 1e-4) {
  auto continue_wins = [&](double lambda) {
    const double retire = lambda / (1.0 - beta);
    // value[d][i]: i extra heads after d pulls; horizon values retire only.
    std::vector<std::vector<double>> value(horizon + 1);
    value[horizon].assign(horizon + 1, retire);
    for (int d = horizon - 1; d >= 0; --d) {
      value[d].resize(d + 1);
      for (int i = 0; i <= d; ++i) {
        const double mean = (p.alpha_heads + i) / static_cast<double>(p.total() + d);
        const double pull = mean * (1.0 + beta * value[d + 1][i + 1]) + (1.0 - mean) * beta * value[d + 1][i];
        value[d][i] = d == 0 ? pull : std::max(pull, retire);
      }
    }
    return value[0][0] >= retire;
  };
  long lo = 0;
  long hi = static_cast<long>(std::llround(1.0 / step));
  while (hi - lo > 1) {
    const long mid = (lo + hi) / 2;
    if (continue_wins(mid * step)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo * step;
}

}  // namespace amsel::oracle
