#pragma once

#include <span>
#include <vector>

#include "amsel/belief.hpp"

namespace amsel {

/// Non-contingent plan: how many times each coin is flipped.
struct Allocation {
  std::vector<int> flips_per_coin;

  static Allocation single(std::size_t n, CoinIndex coin, int flips);
  static Allocation equal(std::size_t n, int flips);

  int total_flips() const noexcept;
  int total_cost(std::span<const int> costs) const;
};

/// P(h heads in m flips) under the Beta-Binomial predictive of p.
double beta_binomial_pmf(BetaParams p, int m, int h);

/// The whole predictive distribution over h = 0..m.
std::vector<double> beta_binomial_distribution(BetaParams p, int m);

/// E(mu_max | alloc): expected highest posterior mean after carrying out
/// the allocation from `state`.
double evaluate_allocation(const BeliefState& state, const Allocation& alloc);

/// As above, additionally checking the allocation's cost against the
/// state's remaining budget. Throws BudgetExceeded.
double evaluate_allocation(const BeliefState& state, const Allocation& alloc, std::span<const int> costs);

/// Bayes regret of giving each of n uniform-prior coins exactly a flips:
///   n/(n+1) - sum_{h=0}^{a} ((h+1)^n - h^n)/(a+1)^n * (h+1)/(a+2).
double uniform_equal_allocation_regret(int n, int a);

}  // namespace amsel
