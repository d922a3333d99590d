#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace amsel {

/// Zero-based coin position. Text formats and the CLI print it one-based.
using CoinIndex = std::size_t;

enum class Outcome : std::uint8_t { tails = 0, heads = 1 };

/// Beta(alpha_heads, alpha_tails) density over a coin's head probability,
/// restricted to positive integer parameters.
struct BetaParams {
  int alpha_heads = 1;
  int alpha_tails = 1;

  BetaParams() = default;
  BetaParams(int heads, int tails);

  int total() const noexcept { return alpha_heads + alpha_tails; }

  friend bool operator==(const BetaParams&, const BetaParams&) = default;
  friend auto operator<=>(const BetaParams&, const BetaParams&) = default;
};

double beta_mean(BetaParams p) noexcept;
double beta_std(BetaParams p) noexcept;
double beta_pdf(double theta, BetaParams p);
double beta_cdf(double theta, BetaParams p);

/// Exact comparison of posterior means by integer cross-multiplication.
/// Returns <0, 0, >0.
int compare_means(BetaParams a, BetaParams b) noexcept;

/// Per-coin posteriors plus the budget still available for flips.
class BeliefState {
 public:
  BeliefState(std::vector<BetaParams> posteriors, int remaining_budget);

  std::size_t size() const noexcept { return posteriors_.size(); }
  std::span<const BetaParams> posteriors() const noexcept { return posteriors_; }
  const BetaParams& operator[](CoinIndex i) const { return posteriors_[i]; }
  int remaining_budget() const noexcept { return remaining_budget_; }

  /// Conjugate update in place.
  void record(CoinIndex coin, Outcome outcome, int cost);

  friend bool operator==(const BeliefState&, const BeliefState&) = default;

 private:
  std::vector<BetaParams> posteriors_;
  int remaining_budget_;
};

/// Returns a copy of `state` after observing `outcome` on `coin`.
BeliefState update(const BeliefState& state, CoinIndex coin, Outcome outcome, int cost);

struct ProblemInstance {
  std::vector<BetaParams> priors;
  std::vector<int> costs;
  int budget = 0;

  ProblemInstance() = default;
  ProblemInstance(std::vector<BetaParams> priors, std::vector<int> costs, int budget);

  /// n coins sharing one prior and one cost.
  static ProblemInstance identical(std::size_t n, BetaParams prior, int budget, int cost = 1);

  std::size_t size() const noexcept { return priors.size(); }
  BeliefState initial_state() const { return BeliefState(priors, budget); }
  void validate() const;
};

/// Lowest-index coin among those with the highest posterior mean.
CoinIndex winner(const BeliefState& state);
double max_mean(const BeliefState& state);

bool affordable(const BeliefState& state, std::span<const int> costs, CoinIndex coin);
bool any_affordable(const BeliefState& state, std::span<const int> costs);

struct ExpectedMaxOptions {
  std::size_t degree_cap = 4096;
};

/// E(max_i Theta_i) under independent Beta posteriors, computed from the
/// exact polynomial form of prod_i F_i. Throws DegreeOverflow above the cap.
double expected_theta_max(const BeliefState& state, ExpectedMaxOptions options = {});

/// Adaptive Gauss-Kronrod on 1 - prod_i F_i; used above the degree cap.
double expected_theta_max_quadrature(const BeliefState& state, double tolerance = 1e-10);

/// Exact value when within the default cap, quadrature otherwise.
double expected_theta_max_auto(const BeliefState& state);

/// E(Theta_max) - mu_max. Falls back to quadrature past the degree cap.
double min_regret(const BeliefState& state);

}  // namespace amsel
