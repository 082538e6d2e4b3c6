#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gegenorm/rational.hpp"

namespace gegenorm {

/// Dense univariate polynomial with rational coefficients, coeffs_[k] holding
/// the coefficient of x^k. Canonical form never stores trailing zeros, so the
/// zero polynomial is the empty vector and degree() is size()-1 throughout.
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(std::vector<Rational> coeffs);

  static DensePoly constant(Rational c);
  static DensePoly monomial(Rational c, std::size_t k);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  /// Coefficient of x^k; zero beyond the degree.
  const Rational& coeff(std::size_t k) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const DensePoly& a, const DensePoly& b) { return a.coeffs_ != b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

DensePoly operator+(const DensePoly& a, const DensePoly& b);
DensePoly operator-(const DensePoly& a, const DensePoly& b);
DensePoly operator*(const DensePoly& a, const DensePoly& b);

/// c * p, optionally multiplied by x as well. The recurrence layer leans on
/// this to avoid building temporaries for every term.
DensePoly scale_shift(const DensePoly& p, const Rational& c, bool mul_by_x);
DensePoly derivative(const DensePoly& p);
Rational evaluate(const DensePoly& p, const Rational& x);

/// Integral of p(x)^2 over [0,1], exact.
Rational exact_l2_norm(const DensePoly& p);
/// Integral of (1-x^2) p(x)^2 over [0,1], exact.
Rational exact_weighted_l2_norm(const DensePoly& p);

/// Human-readable form like "12x^2 - 2"; used by diagnostics only.
std::string to_string(const DensePoly& p);

}  // namespace gegenorm
