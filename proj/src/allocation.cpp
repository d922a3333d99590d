#include "amsel/allocation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "amsel/errors.hpp"

namespace amsel {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

/// Posterior mean (alpha_heads + h) / (total + m) kept as an exact fraction.
struct Fraction {
  std::int64_t num;
  std::int64_t den;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }
};

struct Atom {
  Fraction mean;
  double probability;
  CoinIndex coin;
};

/// Segment tree of per-coin CDF values; the root holds their product.
class ProductTree {
 public:
  explicit ProductTree(std::size_t n) : leaves_(std::bit_ceil(n)), nodes_(2 * leaves_, 1.0) {
    for (std::size_t i = 0; i < n; ++i) nodes_[leaves_ + i] = 0.0;
    for (std::size_t i = leaves_ - 1; i > 0; --i) nodes_[i] = nodes_[2 * i] * nodes_[2 * i + 1];
  }

  void set(std::size_t i, double value) {
    std::size_t k = leaves_ + i;
    nodes_[k] = value;
    for (k /= 2; k > 0; k /= 2) nodes_[k] = nodes_[2 * k] * nodes_[2 * k + 1];
  }

  double product() const { return nodes_[1]; }

 private:
  std::size_t leaves_;
  std::vector<double> nodes_;
};

void check_shape(const BeliefState& state, const Allocation& alloc) {
  if (alloc.flips_per_coin.size() != state.size()) {
    throw InvalidArgument("allocation has " + std::to_string(alloc.flips_per_coin.size()) + " entries for " +
                          std::to_string(state.size()) + " coins");
  }
  for (int a : alloc.flips_per_coin) {
    if (a < 0) throw InvalidArgument("allocation entries must be nonnegative");
  }
}

/// Only one coin is flipped: every other coin keeps its current mean.
double evaluate_single_coin(const BeliefState& state, CoinIndex coin, int m) {
  const auto posteriors = state.posteriors();
  double others = 0.0;
  for (CoinIndex j = 0; j < posteriors.size(); ++j) {
    if (j != coin) others = std::max(others, beta_mean(posteriors[j]));
  }
  const BetaParams p = posteriors[coin];
  const auto pmf = beta_binomial_distribution(p, m);
  const double den = p.total() + m;
  double sum = 0.0;
  for (int h = 0; h <= m; ++h) sum += pmf[h] * std::max(others, (p.alpha_heads + h) / den);
  return sum;
}

}  // namespace

Allocation Allocation::single(std::size_t n, CoinIndex coin, int flips) {
  Allocation alloc{std::vector<int>(n, 0)};
  alloc.flips_per_coin.at(coin) = flips;
  return alloc;
}

Allocation Allocation::equal(std::size_t n, int flips) { return Allocation{std::vector<int>(n, flips)}; }

int Allocation::total_flips() const noexcept {
  return std::accumulate(flips_per_coin.begin(), flips_per_coin.end(), 0);
}

int Allocation::total_cost(std::span<const int> costs) const {
  int total = 0;
  for (std::size_t i = 0; i < flips_per_coin.size(); ++i) {
    total += flips_per_coin[i] * (costs.empty() ? 1 : costs[i]);
  }
  return total;
}

double beta_binomial_pmf(BetaParams p, int m, int h) {
  if (m < 0) throw InvalidArgument("beta_binomial_pmf: m must be nonnegative");
  if (h < 0 || h > m) throw InvalidArgument("beta_binomial_pmf: h must lie in [0, m]");
  const double a = p.alpha_heads;
  const double b = p.alpha_tails;
  const double log_choose = std::lgamma(m + 1.0) - std::lgamma(h + 1.0) - std::lgamma(m - h + 1.0);
  return std::exp(log_choose + log_beta(a + h, b + m - h) - log_beta(a, b));
}

std::vector<double> beta_binomial_distribution(BetaParams p, int m) {
  if (m < 0) throw InvalidArgument("beta_binomial_distribution: m must be nonnegative");
  std::vector<double> out(static_cast<std::size_t>(m) + 1);
  const double a = p.alpha_heads;
  const double b = p.alpha_tails;
  // log pmf(0) = log B(a, b + m) - log B(a, b), then the ratio
  // pmf(h+1)/pmf(h) = (m-h)(a+h) / ((h+1)(b+m-h-1)).
  double log_p = log_beta(a, b + m) - log_beta(a, b);
  for (int h = 0; h <= m; ++h) {
    out[h] = std::exp(log_p);
    if (h < m) log_p += std::log((m - h) * (a + h) / ((h + 1.0) * (b + m - h - 1.0)));
  }
  return out;
}

double evaluate_allocation(const BeliefState& state, const Allocation& alloc) {
  check_shape(state, alloc);
  const auto posteriors = state.posteriors();
  const std::size_t n = posteriors.size();

  std::size_t flipped = 0;
  CoinIndex last = 0;
  for (CoinIndex i = 0; i < n; ++i) {
    if (alloc.flips_per_coin[i] > 0) {
      ++flipped;
      last = i;
    }
  }
  if (flipped == 0) return max_mean(state);
  if (flipped == 1) return evaluate_single_coin(state, last, alloc.flips_per_coin[last]);

  // Every attainable posterior mean of every coin, with its predictive
  // probability. Coin i's atoms are already ascending in h.
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(alloc.total_flips()) + n);
  for (CoinIndex i = 0; i < n; ++i) {
    const BetaParams p = posteriors[i];
    const int m = alloc.flips_per_coin[i];
    const auto pmf = beta_binomial_distribution(p, m);
    for (int h = 0; h <= m; ++h) {
      atoms.push_back({Fraction{p.alpha_heads + h, static_cast<std::int64_t>(p.total()) + m}, pmf[h], i});
    }
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.mean < y.mean; });

  // Sweep the merged support: E[max] = sum_v v * (P(max <= v) - P(max < v)).
  ProductTree tree(n);
  std::vector<double> cdf(n, 0.0);
  double previous = 0.0;
  double expectation = 0.0;
  for (std::size_t k = 0; k < atoms.size();) {
    const Fraction v = atoms[k].mean;
    for (; k < atoms.size() && atoms[k].mean == v; ++k) {
      const CoinIndex i = atoms[k].coin;
      cdf[i] += atoms[k].probability;
      tree.set(i, cdf[i]);
    }
    const double current = tree.product();
    expectation += v.value() * (current - previous);
    previous = current;
  }
  return expectation;
}

double evaluate_allocation(const BeliefState& state, const Allocation& alloc, std::span<const int> costs) {
  check_shape(state, alloc);
  if (!costs.empty() && costs.size() != state.size()) throw InvalidArgument("costs do not match coin count");
  const int cost = alloc.total_cost(costs);
  if (cost > state.remaining_budget()) {
    throw BudgetExceeded("allocation costs " + std::to_string(cost) + " but only " +
                         std::to_string(state.remaining_budget()) + " remains");
  }
  return evaluate_allocation(state, alloc);
}

double uniform_equal_allocation_regret(int n, int a) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (a < 0) throw InvalidArgument("a must be nonnegative");
  if (n == 1) return 0.0;
  const double denom = a + 1.0;
  double sum = 0.0;
  for (int h = 0; h <= a; ++h) {
    const double mass = std::pow((h + 1) / denom, n) - std::pow(h / denom, n);
    sum += mass * (h + 1.0) / (a + 2.0);
  }
  return std::max(0.0, static_cast<double>(n) / (n + 1) - sum);
}

}  // namespace amsel
