#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "amsel/belief.hpp"

namespace amsel {

/// Polynomial on [0, 1] in the Bernstein basis:
///   p(x) = sum_j c_j * C(N, j) x^j (1 - x)^(N - j).
/// Products of nonnegative-coefficient polynomials stay nonnegative, which
/// keeps the product of many Beta CDFs free of cancellation.
class BernsteinPolynomial {
 public:
  explicit BernsteinPolynomial(std::vector<double> coefficients);

  /// The constant polynomial 1 of degree zero.
  static BernsteinPolynomial one();

  std::size_t degree() const noexcept { return coefficients_.size() - 1; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }

  /// de Casteljau evaluation.
  double operator()(double x) const;

  /// Integral over [0, 1]; each basis function integrates to 1 / (N + 1).
  double integral() const;

  BernsteinPolynomial derivative() const;

  friend BernsteinPolynomial operator*(const BernsteinPolynomial& a, const BernsteinPolynomial& b);

 private:
  std::vector<double> coefficients_;
};

/// CDF of an integer Beta as a Bernstein polynomial of degree a + b - 1:
/// coefficient j is 1 for j >= alpha_heads and 0 below.
BernsteinPolynomial beta_cdf_polynomial(BetaParams p);

}  // namespace amsel
