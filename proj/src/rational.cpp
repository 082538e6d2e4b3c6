#include "gegenorm/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace gegenorm {

namespace {

// mpq_class(a, b) stores a/b verbatim; canonical form (lowest terms, positive
// denominator) has to be requested explicitly.
mpq_class make_canonical(mpz_class num, mpz_class den) {
  if (sgn(den) == 0) throw std::invalid_argument("rational with zero denominator");
  mpq_class q;
  mpq_set_num(q.get_mpq_t(), num.get_mpz_t());
  mpq_set_den(q.get_mpq_t(), den.get_mpz_t());
  q.canonicalize();
  return q;
}

bool parse_integer(std::string_view text, mpz_class& out) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos)
    return false;
  mpz_set_str(out.get_mpz_t(), std::string(text).c_str(), 10);
  if (negative) out = -out;
  return true;
}

}  // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(mpz_class num, mpz_class den) : v_(make_canonical(std::move(num), std::move(den))) {}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num, den;
    if (!parse_integer(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_integer(text.substr(slash + 1), den)) return std::nullopt;
    if (sgn(den) == 0) return std::nullopt;
    return Rational(std::move(num), std::move(den));
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos)
      return std::nullopt;
    bool negative = !head.empty() && head.front() == '-';
    if (!head.empty() && (head.front() == '+' || head.front() == '-')) head.remove_prefix(1);
    mpz_class whole = 0;
    if (!head.empty() && !parse_integer(head, whole)) return std::nullopt;
    mpz_class den = 1;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    mpz_class digits;
    if (!parse_integer(frac, digits)) return std::nullopt;
    mpz_class num = whole * den + digits;
    if (negative) num = -num;
    return Rational(std::move(num), std::move(den));
  }

  mpz_class num;
  if (!parse_integer(text, num)) return std::nullopt;
  return Rational(std::move(num), mpz_class(1));
}

Rational abs(const Rational& a) {
  Rational r;
  r.v_ = abs(a.v_);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.v_; }

}  // namespace gegenorm
