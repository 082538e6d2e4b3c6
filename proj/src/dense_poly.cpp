#include "gegenorm/dense_poly.hpp"

#include <sstream>
#include <utility>

namespace gegenorm {

namespace {
const Rational kZero;
}

DensePoly::DensePoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void DensePoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

DensePoly DensePoly::constant(Rational c) {
  std::vector<Rational> v;
  if (!c.is_zero()) v.push_back(std::move(c));
  return DensePoly(std::move(v));
}

DensePoly DensePoly::monomial(Rational c, std::size_t k) {
  if (c.is_zero()) return DensePoly();
  std::vector<Rational> v(k + 1);
  v[k] = std::move(c);
  return DensePoly(std::move(v));
}

const Rational& DensePoly::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : kZero;
}

DensePoly operator+(const DensePoly& a, const DensePoly& b) {
  std::vector<Rational> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
  return DensePoly(std::move(v));
}

DensePoly operator-(const DensePoly& a, const DensePoly& b) {
  std::vector<Rational> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) - b.coeff(k);
  return DensePoly(std::move(v));
}

DensePoly operator*(const DensePoly& a, const DensePoly& b) {
  if (a.is_zero() || b.is_zero()) return DensePoly();
  std::vector<Rational> v(a.coeffs().size() + b.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      v[i + j] += a.coeffs()[i] * b.coeffs()[j];
  }
  return DensePoly(std::move(v));
}

DensePoly scale_shift(const DensePoly& p, const Rational& c, bool mul_by_x) {
  if (p.is_zero() || c.is_zero()) return DensePoly();
  std::size_t offset = mul_by_x ? 1 : 0;
  std::vector<Rational> v(p.coeffs().size() + offset);
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) v[k + offset] = c * p.coeffs()[k];
  return DensePoly(std::move(v));
}

DensePoly derivative(const DensePoly& p) {
  if (p.coeffs().size() <= 1) return DensePoly();
  std::vector<Rational> v(p.coeffs().size() - 1);
  for (std::size_t k = 1; k < p.coeffs().size(); ++k)
    v[k - 1] = Rational(static_cast<long>(k)) * p.coeffs()[k];
  return DensePoly(std::move(v));
}

Rational evaluate(const DensePoly& p, const Rational& x) {
  Rational acc;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * x + p.coeffs()[k];
  return acc;
}

namespace {

// Clears denominators: N[i] = c_i * D with D the lcm of all coefficient
// denominators, so the quadratic moment sums below run in pure integers.
mpz_class integerize(const std::vector<Rational>& c, std::vector<mpz_class>& N) {
  mpz_class D = 1;
  for (const auto& ci : c) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), ci.den().get_mpz_t());
  N.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    mpz_divexact(N[i].get_mpz_t(), D.get_mpz_t(), c[i].den().get_mpz_t());
    N[i] *= c[i].num();
  }
  return D;
}

// sum_{i,j} N_i N_j w[i+j], exploiting symmetry. Half the N_i vanish for the
// polynomials this library cares about, so zero entries are skipped early.
mpz_class quadratic_form(const std::vector<mpz_class>& N, const std::vector<mpz_class>& w) {
  mpz_class diag = 0, cross = 0, t;
  for (std::size_t i = 0; i < N.size(); ++i) {
    if (sgn(N[i]) == 0) continue;
    t = N[i] * N[i];
    mpz_addmul(diag.get_mpz_t(), t.get_mpz_t(), w[2 * i].get_mpz_t());
    for (std::size_t j = i + 1; j < N.size(); ++j) {
      if (sgn(N[j]) == 0) continue;
      t = N[i] * N[j];
      mpz_addmul(cross.get_mpz_t(), t.get_mpz_t(), w[i + j].get_mpz_t());
    }
  }
  return diag + 2 * cross;
}

mpz_class lcm_up_to(unsigned long limit) {
  mpz_class L = 1;
  for (unsigned long k = 2; k <= limit; ++k) mpz_lcm_ui(L.get_mpz_t(), L.get_mpz_t(), k);
  return L;
}

}  // namespace

Rational exact_l2_norm(const DensePoly& p) {
  if (p.is_zero()) return Rational();
  std::vector<mpz_class> N;
  mpz_class D = integerize(p.coeffs(), N);
  // integral of x^k over [0,1] is 1/(k+1); L = lcm(1..2d+1) clears them all
  std::size_t m = N.size();
  mpz_class L = lcm_up_to(2 * m - 1);
  std::vector<mpz_class> w(2 * m - 1);
  for (std::size_t k = 0; k < w.size(); ++k)
    mpz_divexact_ui(w[k].get_mpz_t(), L.get_mpz_t(), k + 1);
  return Rational(quadratic_form(N, w), D * D * L);
}

Rational exact_weighted_l2_norm(const DensePoly& p) {
  if (p.is_zero()) return Rational();
  std::vector<mpz_class> N;
  mpz_class D = integerize(p.coeffs(), N);
  // weight 1-x^2 turns the monomial integral into 1/(k+1) - 1/(k+3)
  std::size_t m = N.size();
  mpz_class L = lcm_up_to(2 * m + 1);
  std::vector<mpz_class> w(2 * m - 1);
  mpz_class a, b;
  for (std::size_t k = 0; k < w.size(); ++k) {
    mpz_divexact_ui(a.get_mpz_t(), L.get_mpz_t(), k + 1);
    mpz_divexact_ui(b.get_mpz_t(), L.get_mpz_t(), k + 3);
    w[k] = a - b;
  }
  return Rational(quadratic_form(N, w), D * D * L);
}

std::string to_string(const DensePoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    const Rational& c = p.coeffs()[k];
    if (c.is_zero()) continue;
    Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << '-';
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    bool unit = mag == Rational(1) && k > 0;
    if (!unit) os << mag.str();
    if (k > 0) {
      if (!unit) os << '*';
      os << 'x';
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

}  // namespace gegenorm
