#include <doctest.h>

#include <cmath>
#include <random>

#include "amsel/bernstein.hpp"
#include "amsel/belief.hpp"
#include "amsel/errors.hpp"
#include "oracles.hpp"

using namespace amsel;

namespace {

BeliefState random_state(std::mt19937_64& rng, int max_n, int max_param, int budget = 0) {
  std::uniform_int_distribution<int> n_dist(1, max_n);
  std::uniform_int_distribution<int> p_dist(1, max_param);
  std::vector<BetaParams> post(n_dist(rng));
  for (auto& p : post) p = BetaParams(p_dist(rng), p_dist(rng));
  return BeliefState(post, budget);
}

}  // namespace

TEST_CASE("beta parameters reject non-positive values") {
  CHECK_THROWS_AS(BetaParams(0, 1), InvalidArgument);
  CHECK_THROWS_AS(BetaParams(1, -2), InvalidArgument);
  CHECK(BetaParams(3, 4).total() == 7);
}

TEST_CASE("mean and standard deviation") {
  CHECK(beta_mean({1, 1}) == doctest::Approx(0.5));
  CHECK(beta_mean({5, 2}) == doctest::Approx(5.0 / 7.0));
  CHECK(beta_std({1, 1}) == doctest::Approx(std::sqrt(1.0 / 12.0)));
  CHECK(beta_std({5, 1}) == doctest::Approx(std::sqrt(5.0 / 252.0)).epsilon(1e-12));
}

TEST_CASE("compare_means is exact") {
  CHECK(compare_means({1, 1}, {2, 2}) == 0);
  CHECK(compare_means({2, 1}, {1, 1}) > 0);
  CHECK(compare_means({5, 3}, {17, 9}) < 0);
  CHECK(compare_means({100000, 99999}, {100001, 100000}) > 0);
  CHECK(compare_means({200000, 100000}, {400000, 200000}) == 0);
}

TEST_CASE("pdf and cdf agree") {
  const std::vector<BetaParams> cases{{1, 1}, {2, 5}, {5, 2}, {21, 11}, {3, 3}};
  for (const auto& p : cases) {
    double previous = 0.0;
    for (int i = 1; i < 64; ++i) {
      const double x = i / 64.0;
      const double f = beta_cdf(x, p);
      CHECK(f >= previous);
      previous = f;
      const double h = 1e-6;
      const double slope = (beta_cdf(x + h, p) - beta_cdf(x - h, p)) / (2 * h);
      CHECK(slope == doctest::Approx(beta_pdf(x, p)).epsilon(1e-6));
      CHECK(beta_pdf(x, p) == doctest::Approx(oracle::density(x, p)).epsilon(1e-9));
    }
    CHECK(beta_cdf(0.0, p) == 0.0);
    CHECK(beta_cdf(1.0, p) == 1.0);
  }
  CHECK_THROWS_AS(beta_cdf(1.5, {1, 1}), InvalidArgument);
}

TEST_CASE("Bernstein cdf polynomial matches the Beta cdf and differentiates to the pdf") {
  for (const BetaParams p : {BetaParams{2, 3}, BetaParams{4, 1}, BetaParams{7, 9}}) {
    const auto poly = beta_cdf_polynomial(p);
    CHECK(poly.degree() == static_cast<std::size_t>(p.total() - 1));
    const auto deriv = poly.derivative();
    for (int i = 0; i <= 64; ++i) {
      const double x = i / 64.0;
      CHECK(poly(x) == doctest::Approx(beta_cdf(x, p)).epsilon(1e-12));
      CHECK(deriv(x) == doctest::Approx(beta_pdf(x, p)).epsilon(1e-9));
    }
  }
}

TEST_CASE("Bernstein product evaluates pointwise") {
  const auto a = beta_cdf_polynomial({2, 3});
  const auto b = beta_cdf_polynomial({5, 1});
  const auto prod = a * b;
  CHECK(prod.degree() == a.degree() + b.degree());
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    CHECK(prod(x) == doctest::Approx(a(x) * b(x)).epsilon(1e-12));
  }
  CHECK(BernsteinPolynomial::one().integral() == doctest::Approx(1.0));
}

TEST_CASE("conjugate update") {
  BeliefState s({{1, 1}, {2, 3}}, 5);
  s.record(1, Outcome::heads, 2);
  CHECK(s[1] == BetaParams(3, 3));
  CHECK(s.remaining_budget() == 3);
  const auto t = update(s, 0, Outcome::tails, 1);
  CHECK(t[0] == BetaParams(1, 2));
  CHECK(s[0] == BetaParams(1, 1));
  CHECK(t.remaining_budget() == 2);
  CHECK_THROWS_AS(update(s, 2, Outcome::heads, 1), InvalidCoin);
  CHECK_THROWS_AS(update(s, 0, Outcome::heads, 4), BudgetExceeded);
}

TEST_CASE("problem instance validation") {
  CHECK_THROWS_AS(ProblemInstance({}, {}, 1), InvalidArgument);
  CHECK_THROWS_AS(ProblemInstance({{1, 1}}, {1}, -1), InvalidArgument);
  CHECK_THROWS_AS(ProblemInstance({{1, 1}, {1, 1}}, {1}, 1), InvalidArgument);
  CHECK_THROWS_AS(ProblemInstance({{1, 1}}, {0}, 1), InvalidArgument);
  const auto inst = ProblemInstance::identical(4, {1, 1}, 3);
  CHECK(inst.size() == 4);
  CHECK(inst.initial_state().remaining_budget() == 3);
}

TEST_CASE("winner takes the lowest index among equal means") {
  CHECK(winner(BeliefState({{1, 1}, {2, 2}, {3, 1}, {6, 2}}, 0)) == 2);
  CHECK(winner(BeliefState({{1, 1}, {2, 2}}, 0)) == 0);
  CHECK(max_mean(BeliefState({{1, 3}, {2, 3}}, 0)) == doctest::Approx(0.4));
}

TEST_CASE("affordability") {
  const BeliefState s({{1, 1}, {1, 1}}, 2);
  const std::vector<int> costs{3, 2};
  CHECK_FALSE(affordable(s, costs, 0));
  CHECK(affordable(s, costs, 1));
  CHECK(any_affordable(s, costs));
  CHECK(any_affordable(s, {}));
  CHECK_FALSE(any_affordable(BeliefState({{1, 1}}, 0), {}));
}

TEST_CASE("E(Theta_max) of n uniform coins is n/(n+1)") {
  for (int n = 1; n <= 20; ++n) {
    const BeliefState s(std::vector<BetaParams>(n, BetaParams{1, 1}), 0);
    CHECK(std::abs(expected_theta_max(s) - n / (n + 1.0)) < 1e-10);
  }
}

TEST_CASE("E(Theta_max) for a single coin is its mean") {
  for (const BetaParams p : {BetaParams{1, 1}, BetaParams{3, 8}, BetaParams{40, 2}}) {
    CHECK(expected_theta_max(BeliefState({p}, 0)) == doctest::Approx(beta_mean(p)).epsilon(1e-12));
  }
}

TEST_CASE("E(Theta_max) against 2-D quadrature") {
  CHECK(std::abs(expected_theta_max(BeliefState({{1, 2}, {1, 3}}, 0)) - 5.0 / 12.0) < 1e-12);
  CHECK(std::abs(oracle::expected_max_2d({1, 2}, {1, 3}) - 5.0 / 12.0) < 1e-8);
  for (const auto& [a, b] : std::vector<std::pair<BetaParams, BetaParams>>{
           {{1, 1}, {5, 3}}, {{2, 7}, {4, 4}}, {{5, 2}, {21, 11}}, {{9, 1}, {1, 9}}}) {
    CHECK(std::abs(expected_theta_max(BeliefState({a, b}, 0)) - oracle::expected_max_2d(a, b)) < 1e-8);
  }
}

TEST_CASE("E(Theta_max) against nested 1-D quadrature") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const auto s = random_state(rng, 5, 12);
    const std::vector<BetaParams> coins(s.posteriors().begin(), s.posteriors().end());
    CHECK(std::abs(expected_theta_max(s) - oracle::expected_max_1d(coins)) < 1e-8);
  }
}

TEST_CASE("exact and quadrature paths agree") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    const auto s = random_state(rng, 6, 30);
    CHECK(std::abs(expected_theta_max(s) - expected_theta_max_quadrature(s)) < 1e-9);
  }
}

TEST_CASE("degree cap") {
  const BeliefState big({{3000, 1000}, {2000, 2000}}, 0);
  CHECK_THROWS_AS(expected_theta_max(big), DegreeOverflow);
  CHECK_NOTHROW(expected_theta_max(big, {8192}));
  const double q = expected_theta_max_quadrature(big);
  CHECK(std::abs(expected_theta_max(big, {8192}) - q) < 1e-9);
  CHECK(expected_theta_max_auto(big) == doctest::Approx(q).epsilon(1e-12));
  CHECK(min_regret(big) >= 0.0);
}

TEST_CASE("min_regret is non-negative and zero for point-like beliefs") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    CHECK(min_regret(random_state(rng, 6, 20)) >= 0.0);
  }
  CHECK(min_regret(BeliefState({{3, 4}}, 0)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(min_regret(BeliefState({{1, 2}, {1, 3}}, 0)) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}
