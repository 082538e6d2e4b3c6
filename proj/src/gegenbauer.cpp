#include "gegenorm/gegenbauer.hpp"

#include <stdexcept>
#include <utility>

namespace gegenorm {

bool Lambda::valid(const Rational& value) {
  if (value.is_zero()) return false;
  return value > Rational(-1, 2);
}

Lambda::Lambda(Rational value) : v_(std::move(value)) {
  if (!valid(v_))
    throw std::domain_error("index " + v_.str() + " is outside the valid range (-1/2,0)∪(0,∞)");
}

namespace {

// Grows polys (assumed consistent up to its current back) to max_degree using
// the three-term recurrence.
void extend_polys(std::vector<DensePoly>& polys, const Rational& lam, unsigned max_degree) {
  if (polys.empty()) polys.push_back(DensePoly::constant(1));
  if (polys.size() == 1 && max_degree >= 1)
    polys.push_back(DensePoly::monomial(2 * lam, 1));
  while (polys.size() <= max_degree) {
    unsigned n = static_cast<unsigned>(polys.size()) - 1;
    Rational np1(static_cast<long>(n) + 1);
    Rational a = 2 * (Rational(static_cast<long>(n)) + lam) / np1;
    Rational b = (Rational(static_cast<long>(n)) + 2 * lam - 1) / np1;
    polys.push_back(scale_shift(polys[n], a, true) - scale_shift(polys[n - 1], b, false));
  }
}

}  // namespace

GegenbauerFamily::GegenbauerFamily(Lambda index, unsigned max_degree) : index_(std::move(index)) {
  polys_.reserve(max_degree + 1);
  extend_polys(polys_, index_.value(), max_degree);
}

GegenbauerFamily::GegenbauerFamily(Lambda index, std::vector<DensePoly> polys, bool)
    : index_(std::move(index)), polys_(std::move(polys)) {}

const DensePoly& GegenbauerFamily::poly(unsigned n) const {
  if (n >= polys_.size())
    throw std::out_of_range("family at index " + index_.value().str() + " holds degrees 0.." +
                            std::to_string(max_degree()) + ", degree " + std::to_string(n) +
                            " requested");
  return polys_[n];
}

GegenbauerFamily GegenbauerFamily::extended(unsigned new_max_degree) const {
  GegenbauerFamily copy(index_, polys_, true);
  copy.polys_.reserve(new_max_degree + 1);
  extend_polys(copy.polys_, index_.value(), new_max_degree);
  return copy;
}

GegenbauerFamily GegenbauerFamily::from_parts(Lambda index, std::vector<DensePoly> polys) {
  if (polys.empty()) throw std::invalid_argument("from_parts needs at least degree 0");
  for (std::size_t n = 0; n < polys.size(); ++n)
    if (polys[n].degree() != static_cast<long>(n))
      throw std::invalid_argument("from_parts: entry " + std::to_string(n) +
                                  " does not have degree " + std::to_string(n));
  return GegenbauerFamily(std::move(index), std::move(polys), true);
}

GegenbauerFamily build_family(const Lambda& index, unsigned max_degree) {
  return GegenbauerFamily(index, max_degree);
}

std::shared_ptr<const GegenbauerFamily> FamilyCache::at_least(const Lambda& index,
                                                              unsigned min_degree) {
  auto it = families_.find(index.value());
  if (it == families_.end()) {
    auto fam = std::make_shared<const GegenbauerFamily>(index, min_degree);
    families_.emplace(index.value(), fam);
    return fam;
  }
  if (it->second->max_degree() < min_degree) {
    it->second = std::make_shared<const GegenbauerFamily>(it->second->extended(min_degree));
  }
  return it->second;
}

FamilyCache& family_cache() {
  static FamilyCache cache;
  return cache;
}

Rational endpoint_value(const Lambda& index, unsigned n) {
  Rational acc(1);
  const Rational two_lam = 2 * index.value();
  for (unsigned i = 0; i < n; ++i)
    acc *= (two_lam + static_cast<long>(i)) / Rational(static_cast<long>(i) + 1);
  return acc;
}

double endpoint_value_f(const Lambda& index, unsigned n) {
  double acc = 1.0;
  const double two_lam = 2.0 * index.value().to_double();
  for (unsigned i = 0; i < n; ++i) acc *= (two_lam + i) / (i + 1.0);
  return acc;
}

bool check_derivative_identity(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                               unsigned n) {
  const Rational& lam = base.index().value();
  return derivative(base.poly(n + 1)) == scale_shift(lifted.poly(n), 2 * lam, false);
}

bool check_index_raise(const GegenbauerFamily& base, const GegenbauerFamily& lifted, unsigned n) {
  const Rational& lam = base.index().value();
  DensePoly lhs = scale_shift(base.poly(n + 2), Rational(static_cast<long>(n) + 2), false);
  DensePoly rhs =
      scale_shift(lifted.poly(n + 1), 2 * lam, true) - scale_shift(lifted.poly(n), 2 * lam, false);
  return lhs == rhs;
}

bool check_index_difference(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                            unsigned n) {
  if (n < 2) throw std::invalid_argument("index-difference identity needs n >= 2");
  const Rational& lam = base.index().value();
  DensePoly lhs = scale_shift(base.poly(n), Rational(static_cast<long>(n)) + lam, false);
  DensePoly rhs = scale_shift(lifted.poly(n) - lifted.poly(n - 2), lam, false);
  return lhs == rhs;
}

bool check_shift_sum(const GegenbauerFamily& base, const GegenbauerFamily& lifted, unsigned n) {
  if (n < 2) throw std::invalid_argument("shifted-sum identity needs n >= 2");
  DensePoly lhs = lifted.poly(n) + lifted.poly(n - 2);
  DensePoly rhs = scale_shift(lifted.poly(n - 1), Rational(2), true) + base.poly(n);
  return lhs == rhs;
}

bool check_recursion_identities(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                                unsigned n) {
  return check_index_raise(base, lifted, n) && check_index_difference(base, lifted, n) &&
         check_shift_sum(base, lifted, n);
}

bool check_three_term(const GegenbauerFamily& family, unsigned n) {
  if (n < 1) throw std::invalid_argument("three-term recurrence needs n >= 1");
  const Rational& lam = family.index().value();
  DensePoly lhs = scale_shift(family.poly(n + 1), Rational(static_cast<long>(n) + 1), false);
  DensePoly rhs = scale_shift(family.poly(n), 2 * (Rational(static_cast<long>(n)) + lam), true) -
                  scale_shift(family.poly(n - 1), Rational(static_cast<long>(n)) - 1 + 2 * lam, false);
  return lhs == rhs;
}

bool check_derivative_identity(const Lambda& index, unsigned n) {
  auto base = family_cache().at_least(index, n + 1);
  auto lifted = family_cache().at_least(index.raised(), n);
  return check_derivative_identity(*base, *lifted, n);
}

bool check_recursion_identities(const Lambda& index, unsigned n) {
  auto base = family_cache().at_least(index, n + 2);
  auto lifted = family_cache().at_least(index.raised(), n + 1);
  return check_recursion_identities(*base, *lifted, n);
}

}  // namespace gegenorm
