#include "gegenorm/norm_table.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gegenorm {

namespace {

// Neumaier's variant of compensated summation. The lift subtracts two nearly
// equal quantities at large n for indices below 1, where the plain running
// sum loses enough digits to show up in the ratio diagnostics.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

void rebuild_prefix(NormTable& t) {
  t.prefix.assign(t.norms.size() + 1, Rational());
  const Rational& lam = t.lambda;
  for (std::size_t k = 0; k < t.norms.size(); ++k)
    t.prefix[k + 1] = t.prefix[k] + (lam + static_cast<long>(k)) / lam * t.norms[k];
}

void rebuild_prefix(NormTableF& t) {
  t.prefix.assign(t.norms.size() + 1, 0.0);
  const double lam = t.lambda.to_double();
  CompensatedSum acc;
  for (std::size_t k = 0; k < t.norms.size(); ++k) {
    acc.add((lam + static_cast<double>(k)) / lam * t.norms[k]);
    t.prefix[k + 1] = acc.value();
  }
}

void require_consistent(const NormTable& t, unsigned n_max, const char* who) {
  if (t.norms.empty() || t.max_degree() < n_max)
    throw std::invalid_argument(std::string(who) + ": base table too short, need degree " +
                                std::to_string(n_max));
  if (t.prefix.size() != t.norms.size() + 1)
    throw std::invalid_argument(std::string(who) + ": prefix sums out of step with norms");
}

void require_consistent(const NormTableF& t, unsigned n_max, const char* who) {
  if (t.norms.empty() || t.max_degree() < n_max)
    throw std::invalid_argument(std::string(who) + ": base table too short, need degree " +
                                std::to_string(n_max));
  if (t.prefix.size() != t.norms.size() + 1)
    throw std::invalid_argument(std::string(who) + ": prefix sums out of step with norms");
}

}  // namespace

EndpointFn endpoint_provider(const Lambda& index) {
  return [index](unsigned n) { return endpoint_value(index, n); };
}

EndpointFnF endpoint_provider_f(const Lambda& index) {
  return [index](unsigned n) { return endpoint_value_f(index, n); };
}

NormTable norm_table_oracle(const GegenbauerFamily& family, std::optional<unsigned> up_to) {
  unsigned top = up_to.value_or(family.max_degree());
  if (top > family.max_degree())
    throw std::invalid_argument("oracle: family holds degrees 0.." +
                                std::to_string(family.max_degree()) + ", degree " +
                                std::to_string(top) + " requested");
  NormTable t;
  t.lambda = family.index().value();
  t.norms.reserve(top + 1);
  for (unsigned k = 0; k <= top; ++k) t.norms.push_back(exact_l2_norm(family.poly(k)));
  rebuild_prefix(t);
  return t;
}

NormTableF to_float(const NormTable& table) {
  NormTableF f;
  f.lambda = table.lambda;
  f.norms.reserve(table.norms.size());
  for (const Rational& v : table.norms) f.norms.push_back(v.to_double());
  rebuild_prefix(f);
  return f;
}

NormTable lift_norms(const NormTable& base, const EndpointFn& endpoint, unsigned n_max) {
  if (n_max < 2) throw std::invalid_argument("lift: n_max must be at least 2");
  require_consistent(base, n_max, "lift");
  const Rational& lam = base.lambda;
  const Rational lam2 = lam * lam;
  const Rational lam3 = lam2 * lam;

  NormTable out;
  out.lambda = Lambda(lam).raised().value();
  out.norms.assign(n_max - 1, Rational());
  out.norms[0] = Rational(1);
  if (n_max >= 3) out.norms[1] = 4 * (lam + 1) * (lam + 1) / 3;

  for (unsigned n = 2; n <= n_max; ++n) {
    Rational nn(static_cast<long>(n));
    Rational e = endpoint(n);
    Rational value = (nn * nn - 2 * lam * nn) / (16 * lam3) * (e * e) +
                     nn * (2 * nn + 1) / (8 * lam2) * base.norms[n] -
                     base.prefix[n] / (4 * lam);
    unsigned k = n - 2;
    if (k <= 1) {
      if (value != out.norms[k])
        throw std::logic_error("lift: recursion disagrees with the seeded entry at degree " +
                               std::to_string(k) + " (index " + out.lambda.str() + ")");
    } else {
      out.norms[k] = value;
    }
  }
  rebuild_prefix(out);
  return out;
}

NormTableF lift_norms(const NormTableF& base, const EndpointFnF& endpoint, unsigned n_max) {
  if (n_max < 2) throw std::invalid_argument("lift: n_max must be at least 2");
  require_consistent(base, n_max, "lift");
  const double lam = base.lambda.to_double();
  const double lam2 = lam * lam;
  const double lam3 = lam2 * lam;

  NormTableF out;
  out.lambda = Lambda(base.lambda).raised().value();
  out.norms.assign(n_max - 1, 0.0);
  out.norms[0] = 1.0;
  if (n_max >= 3) out.norms[1] = 4.0 * (lam + 1) * (lam + 1) / 3.0;

  for (unsigned n = 2; n <= n_max; ++n) {
    double nn = n;
    double e = endpoint(n);
    double value = (nn * nn - 2 * lam * nn) / (16 * lam3) * (e * e) +
                   nn * (2 * nn + 1) / (8 * lam2) * base.norms[n] - base.prefix[n] / (4 * lam);
    unsigned k = n - 2;
    if (k <= 1) {
      double ref = out.norms[k];
      if (std::abs(value - ref) > 1e-9 * std::abs(ref))
        throw std::logic_error("lift: recursion drifted from the seeded entry at degree " +
                               std::to_string(k) + " (index " + out.lambda.str() + ")");
    } else {
      out.norms[k] = value;
    }
  }
  rebuild_prefix(out);
  return out;
}

bool dette_check(const GegenbauerFamily& base, const GegenbauerFamily& lifted, unsigned n) {
  if (n < 1) throw std::invalid_argument("dette_check needs n >= 1");
  const Rational& lam = base.index().value();
  Rational half_ratio = Rational(static_cast<long>(n)) / (2 * lam);
  const DensePoly& cn = base.poly(n);
  const DensePoly& q = lifted.poly(n - 1);
  DensePoly one_minus_x2(std::vector<Rational>{Rational(1), Rational(0), Rational(-1)});
  DensePoly lhs = scale_shift(cn * cn, half_ratio * half_ratio, false) + one_minus_x2 * (q * q);
  DensePoly rhs;
  for (unsigned k = 0; k < n; ++k) {
    const DensePoly& ck = base.poly(k);
    rhs = rhs + scale_shift(ck * ck, (lam + static_cast<long>(k)) / lam, false);
  }
  return lhs == rhs;
}

bool dette_check(const Lambda& index, unsigned n) {
  auto base = family_cache().at_least(index, n);
  auto lifted = family_cache().at_least(index.raised(), n > 0 ? n - 1 : 0);
  return dette_check(*base, *lifted, n);
}

WeightedNorm weighted_norm_closed(const NormTable& base, const EndpointFn& endpoint, unsigned n) {
  if (n < 1) throw std::invalid_argument("weighted norm closed form needs n >= 1");
  require_consistent(base, n + 1, "weighted norm closed form");
  const Rational& lam = base.lambda;
  const Rational lam2 = lam * lam;
  Rational nn(static_cast<long>(n));
  Rational e = endpoint(n);
  Rational value = e * e * (nn + 2 * lam) / (nn + 1) * (1 - 2 * lam) / (8 * lam2) +
                   (nn + 1) * (2 * nn + 3) / (8 * lam2) * base.norms[n + 1] -
                   base.norms[n] * (nn + 2 * lam) / (8 * lam2);
  return WeightedNorm{lam, n, value};
}

double weighted_norm_closed_f(const NormTableF& base, const EndpointFnF& endpoint, unsigned n) {
  if (n < 1) throw std::invalid_argument("weighted norm closed form needs n >= 1");
  require_consistent(base, n + 1, "weighted norm closed form");
  const double lam = base.lambda.to_double();
  const double lam2 = lam * lam;
  double nn = n;
  double e = endpoint(n);
  return e * e * (nn + 2 * lam) / (nn + 1) * (1 - 2 * lam) / (8 * lam2) +
         (nn + 1) * (2 * nn + 3) / (8 * lam2) * base.norms[n + 1] -
         base.norms[n] * (nn + 2 * lam) / (8 * lam2);
}

bool combined_identity_check(const NormTable& base, unsigned n) {
  if (n < 2) throw std::invalid_argument("combined identity needs n >= 2");
  require_consistent(base, n + 1, "combined identity");
  const Rational& lam = base.lambda;
  const Rational lam2 = lam * lam;
  const Rational lam3 = lam2 * lam;
  Rational nn(static_cast<long>(n));
  Rational e = endpoint_value(Lambda(lam), n);
  Rational e2 = e * e;

  // prefix-sum route
  Rational via_recursion = (nn * nn - 2 * lam * nn) / (16 * lam3) * e2 +
                           nn * (2 * nn + 1) / (8 * lam2) * base.norms[n] -
                           base.prefix[n] / (4 * lam);
  // four-term route trading the prefix sum for the norm at n+1
  Rational via_combined = (nn * nn - 2 * lam * nn) / (16 * lam3) * e2 +
                          (2 * nn * nn * (4 * lam - 1) + nn * (4 * lam + 1) + 2 * lam) /
                              (32 * lam3) * base.norms[n] -
                          e2 * (nn + 2 * lam) / (nn + 1) * (1 - 2 * lam) / (32 * lam3) -
                          (nn + 1) * (2 * nn + 3) / (32 * lam3) * base.norms[n + 1];
  return via_recursion == via_combined;
}

bool norm_difference_identity_check(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                                    unsigned n) {
  if (n < 2) throw std::invalid_argument("norm difference identity needs n >= 2");
  const Rational& lam = base.index().value();
  Rational lhs = exact_l2_norm(lifted.poly(n)) - exact_l2_norm(lifted.poly(n - 2));
  Rational e = endpoint_value(base.index(), n);
  Rational rhs = (Rational(static_cast<long>(n)) + lam) / (2 * lam * lam) *
                 (e * e + (2 * lam - 1) * exact_l2_norm(base.poly(n)));
  return lhs == rhs;
}

bool squares_sum_identity_check(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                                unsigned n) {
  const Rational& lam = base.index().value();
  const Rational lam2 = lam * lam;
  const DensePoly& top = lifted.poly(n + 1);
  Rational lhs = exact_l2_norm(scale_shift(top, Rational(1), true)) +
                 exact_l2_norm(lifted.poly(n)) + exact_weighted_l2_norm(top) / (2 * lam);
  Rational np2(static_cast<long>(n) + 2);
  Rational e = endpoint_value(base.index(), n + 2);
  Rational rhs = np2 * np2 / (8 * lam2 * lam) * (e * e) +
                 (2 * lam - 1) * np2 * np2 / (8 * lam2 * lam) * exact_l2_norm(base.poly(n + 2));
  return lhs == rhs;
}

bool moment_difference_identity_check(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                                      unsigned n) {
  const Rational& lam = base.index().value();
  const DensePoly& top = lifted.poly(n + 1);
  Rational lhs =
      exact_l2_norm(scale_shift(top, Rational(1), true)) - exact_l2_norm(lifted.poly(n));
  Rational np2(static_cast<long>(n) + 2);
  Rational e = endpoint_value(base.index(), n + 2);
  Rational rhs = np2 / (4 * lam * lam) *
                 (e * e - (np2 + 1) * exact_l2_norm(base.poly(n + 2)));
  return lhs == rhs;
}

Rational closed_form_lambda1(unsigned n) {
  Rational s;
  for (unsigned k = 0; k <= n; ++k) s += Rational(1, 2 * static_cast<long>(k) + 1);
  return s;
}

ClosedFormLambda2 closed_form_lambda2(unsigned n) {
  if (n < 2) throw std::invalid_argument("index-2 closed forms start at n = 2");
  Rational h;  // 2 Σ_{k=1}^{n} 1/(2k−1)
  for (unsigned k = 1; k <= n; ++k) h += Rational(2, 2 * static_cast<long>(k) - 1);
  Rational n2 = Rational(static_cast<long>(n)) * Rational(static_cast<long>(n));
  ClosedFormLambda2 out;
  out.weighted = (2 * n2 - 1) * h / 16 - n2 / 8;
  out.plain = n2 * n2 / 16 + (4 * n2 - 1) * h / 64 - 5 * n2 / 32;
  return out;
}

NormTableF float_base_table(const Lambda& index, unsigned max_degree, TableSource* source) {
  NormTableF t;
  t.lambda = index.value();
  if (index.value() == Rational(1)) {
    if (source) *source = TableSource::closed_form;
    Rational s;
    t.norms.reserve(max_degree + 1);
    for (unsigned k = 0; k <= max_degree; ++k) {
      s += Rational(1, 2 * static_cast<long>(k) + 1);
      t.norms.push_back(s.to_double());
    }
    rebuild_prefix(t);
    return t;
  }
  if (index.value() == Rational(2)) {
    if (source) *source = TableSource::closed_form;
    // degree k corresponds to n = k+2 in the closed form
    Rational h = Rational(2) + Rational(2, 3);
    t.norms.reserve(max_degree + 1);
    for (unsigned k = 0; k <= max_degree; ++k) {
      unsigned n = k + 2;
      Rational n2 = Rational(static_cast<long>(n)) * Rational(static_cast<long>(n));
      t.norms.push_back((n2 * n2 / 16 + (4 * n2 - 1) * h / 64 - 5 * n2 / 32).to_double());
      h += Rational(2, 2 * static_cast<long>(n) + 1);
    }
    rebuild_prefix(t);
    return t;
  }
  if (source) *source = TableSource::oracle;
  return to_float(norm_table_oracle(build_family(index, max_degree)));
}

NormTableF float_norm_table(const Lambda& index, unsigned max_degree, TableSource* source) {
  const Rational& mu = index.value();
  if (mu == Rational(1) || mu == Rational(2)) return float_base_table(index, max_degree, source);
  Rational below = mu - 1;
  if (Lambda::valid(below)) {
    Lambda base_index(below);
    NormTableF base = float_base_table(base_index, max_degree + 2);
    NormTableF out = lift_norms(base, endpoint_provider_f(base_index), max_degree + 2);
    if (source) *source = TableSource::recursion;
    return out;
  }
  return float_base_table(index, max_degree, source);
}

}  // namespace gegenorm
