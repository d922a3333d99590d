#include "amsel/belief.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "amsel/bernstein.hpp"
#include "amsel/errors.hpp"

namespace amsel {

namespace {

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

int cost_of(std::span<const int> costs, CoinIndex coin) { return costs.empty() ? 1 : costs[coin]; }

}  // namespace

BetaParams::BetaParams(int heads, int tails) : alpha_heads(heads), alpha_tails(tails) {
  if (heads < 1 || tails < 1) {
    throw InvalidArgument("Beta parameters must be positive integers, got B(" + std::to_string(heads) + ", " +
                          std::to_string(tails) + ")");
  }
}

double beta_mean(BetaParams p) noexcept { return static_cast<double>(p.alpha_heads) / p.total(); }

double beta_std(BetaParams p) noexcept {
  const double mu = beta_mean(p);
  return std::sqrt(mu * (1.0 - mu) / (p.total() + 1.0));
}

double beta_pdf(double theta, BetaParams p) {
  if (theta < 0.0 || theta > 1.0) return 0.0;
  const int n = p.total() - 2;
  const double log_norm = std::log(p.total() - 1.0) + log_choose(n, p.alpha_heads - 1);
  return std::exp(log_norm) * std::pow(theta, p.alpha_heads - 1) * std::pow(1.0 - theta, p.alpha_tails - 1);
}

double beta_cdf(double theta, BetaParams p) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidArgument("beta_cdf: theta must lie in [0, 1]");
  if (theta == 0.0) return 0.0;
  if (theta == 1.0) return 1.0;
  // P(Theta <= theta) = P(Binomial(a + b - 1, theta) >= a) for integer a, b.
  const int n = p.total() - 1;
  const double lt = std::log(theta);
  const double lu = std::log1p(-theta);
  double sum = 0.0;
  for (int j = p.alpha_heads; j <= n; ++j) sum += std::exp(log_choose(n, j) + j * lt + (n - j) * lu);
  return std::min(sum, 1.0);
}

int compare_means(BetaParams a, BetaParams b) noexcept {
  const auto lhs = static_cast<std::int64_t>(a.alpha_heads) * b.total();
  const auto rhs = static_cast<std::int64_t>(b.alpha_heads) * a.total();
  return (lhs > rhs) - (lhs < rhs);
}

BeliefState::BeliefState(std::vector<BetaParams> posteriors, int remaining_budget)
    : posteriors_(std::move(posteriors)), remaining_budget_(remaining_budget) {
  if (posteriors_.empty()) throw InvalidArgument("belief state needs at least one coin");
  if (remaining_budget_ < 0) throw InvalidArgument("remaining budget must be nonnegative");
}

void BeliefState::record(CoinIndex coin, Outcome outcome, int cost) {
  if (coin >= posteriors_.size()) throw InvalidCoin("coin index " + std::to_string(coin) + " out of range");
  if (cost < 0) throw InvalidArgument("flip cost must be nonnegative");
  if (cost > remaining_budget_) {
    throw BudgetExceeded("flip cost " + std::to_string(cost) + " exceeds remaining budget " +
                         std::to_string(remaining_budget_));
  }
  auto& p = posteriors_[coin];
  if (outcome == Outcome::heads) {
    ++p.alpha_heads;
  } else {
    ++p.alpha_tails;
  }
  remaining_budget_ -= cost;
}

BeliefState update(const BeliefState& state, CoinIndex coin, Outcome outcome, int cost) {
  BeliefState next = state;
  next.record(coin, outcome, cost);
  return next;
}

ProblemInstance::ProblemInstance(std::vector<BetaParams> priors_in, std::vector<int> costs_in, int budget_in)
    : priors(std::move(priors_in)), costs(std::move(costs_in)), budget(budget_in) {
  validate();
}

ProblemInstance ProblemInstance::identical(std::size_t n, BetaParams prior, int budget, int cost) {
  return ProblemInstance(std::vector<BetaParams>(n, prior), std::vector<int>(n, cost), budget);
}

void ProblemInstance::validate() const {
  if (priors.empty()) throw InvalidArgument("instance needs at least one coin");
  if (priors.size() != costs.size()) throw InvalidArgument("priors and costs differ in length");
  if (budget < 0) throw InvalidArgument("budget must be nonnegative");
  for (int c : costs) {
    if (c < 1) throw InvalidArgument("coin costs must be positive");
  }
}

CoinIndex winner(const BeliefState& state) {
  const auto posteriors = state.posteriors();
  CoinIndex best = 0;
  for (CoinIndex i = 1; i < posteriors.size(); ++i) {
    if (compare_means(posteriors[i], posteriors[best]) > 0) best = i;
  }
  return best;
}

double max_mean(const BeliefState& state) { return beta_mean(state[winner(state)]); }

bool affordable(const BeliefState& state, std::span<const int> costs, CoinIndex coin) {
  return cost_of(costs, coin) <= state.remaining_budget();
}

bool any_affordable(const BeliefState& state, std::span<const int> costs) {
  for (CoinIndex i = 0; i < state.size(); ++i) {
    if (affordable(state, costs, i)) return true;
  }
  return false;
}

double expected_theta_max(const BeliefState& state, ExpectedMaxOptions options) {
  std::size_t total = 0;
  for (const auto& p : state.posteriors()) total += static_cast<std::size_t>(p.total());
  if (total > options.degree_cap) {
    throw DegreeOverflow("sum of Beta parameters " + std::to_string(total) + " exceeds degree cap " +
                         std::to_string(options.degree_cap));
  }
  // E(max) = integral of P(max > x) = 1 - integral of prod_i F_i(x).
  BernsteinPolynomial product = BernsteinPolynomial::one();
  for (const auto& p : state.posteriors()) product = product * beta_cdf_polynomial(p);
  return 1.0 - product.integral();
}

double expected_theta_max_quadrature(const BeliefState& state, double tolerance) {
  auto tail = [&](double x) {
    double prod = 1.0;
    for (const auto& p : state.posteriors()) prod *= beta_cdf(x, p);
    return 1.0 - prod;
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(tail, 0.0, 1.0, 20, tolerance);
}

double expected_theta_max_auto(const BeliefState& state) {
  try {
    return expected_theta_max(state);
  } catch (const DegreeOverflow&) {
    return expected_theta_max_quadrature(state);
  }
}

double min_regret(const BeliefState& state) { return std::max(0.0, expected_theta_max_auto(state) - max_mean(state)); }

}  // namespace amsel
