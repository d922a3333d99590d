#include "amsel/bernstein.hpp"

#include <cmath>
#include <utility>

#include "amsel/errors.hpp"

namespace amsel {

BernsteinPolynomial::BernsteinPolynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw InvalidArgument("Bernstein polynomial needs at least one coefficient");
}

BernsteinPolynomial BernsteinPolynomial::one() { return BernsteinPolynomial({1.0}); }

double BernsteinPolynomial::operator()(double x) const {
  std::vector<double> work = coefficients_;
  const double y = 1.0 - x;
  for (std::size_t level = work.size() - 1; level > 0; --level) {
    for (std::size_t j = 0; j < level; ++j) work[j] = y * work[j] + x * work[j + 1];
  }
  return work[0];
}

double BernsteinPolynomial::integral() const {
  double sum = 0.0;
  for (double c : coefficients_) sum += c;
  return sum / static_cast<double>(coefficients_.size());
}

BernsteinPolynomial BernsteinPolynomial::derivative() const {
  const std::size_t n = degree();
  if (n == 0) return BernsteinPolynomial({0.0});
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = static_cast<double>(n) * (coefficients_[j + 1] - coefficients_[j]);
  }
  return BernsteinPolynomial(std::move(out));
}

BernsteinPolynomial operator*(const BernsteinPolynomial& a, const BernsteinPolynomial& b) {
  const std::size_t n = a.degree();
  const std::size_t m = b.degree();
  const std::size_t d = n + m;

  // log k! accumulated in extended precision; the weights below are
  // hypergeometric probabilities C(n,i) C(m,k-i) / C(n+m,k).
  std::vector<long double> log_fact(d + 1, 0.0L);
  for (std::size_t k = 2; k <= d; ++k) {
    log_fact[k] = log_fact[k - 1] + std::log(static_cast<long double>(k));
  }
  auto log_choose = [&](std::size_t top, std::size_t bottom) {
    return log_fact[top] - log_fact[bottom] - log_fact[top - bottom];
  };

  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  std::vector<double> out(d + 1, 0.0);
  for (std::size_t k = 0; k <= d; ++k) {
    const std::size_t lo = k > m ? k - m : 0;
    const std::size_t hi = k < n ? k : n;
    const long double norm = log_choose(d, k);
    double sum = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
      const double f = ca[i] * cb[k - i];
      if (f == 0.0) continue;
      const long double lw = log_choose(n, i) + log_choose(m, k - i) - norm;
      sum += f * std::exp(static_cast<double>(lw));
    }
    out[k] = sum;
  }
  return BernsteinPolynomial(std::move(out));
}

BernsteinPolynomial beta_cdf_polynomial(BetaParams p) {
  const auto degree = static_cast<std::size_t>(p.total() - 1);
  std::vector<double> coefficients(degree + 1, 0.0);
  for (std::size_t j = static_cast<std::size_t>(p.alpha_heads); j <= degree; ++j) coefficients[j] = 1.0;
  return BernsteinPolynomial(std::move(coefficients));
}

}  // namespace amsel
