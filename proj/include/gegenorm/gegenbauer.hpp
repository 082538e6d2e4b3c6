#pragma once

#include <map>
#include <memory>
#include <vector>

#include "gegenorm/dense_poly.hpp"

namespace gegenorm {

/// Index parameter of the polynomial family. Valid indices form
/// (-1/2, 0) ∪ (0, ∞); zero and everything ≤ -1/2 are rejected.
class Lambda {
 public:
  explicit Lambda(Rational value);
  static bool valid(const Rational& value);

  const Rational& value() const { return v_; }
  Lambda raised() const { return Lambda(v_ + 1); }

  friend bool operator==(const Lambda& a, const Lambda& b) { return a.v_ == b.v_; }

 private:
  Rational v_;
};

/// The polynomials C_0 .. C_max_degree for one index, built by the three-term
/// recurrence (n+1) C_{n+1} = 2(n+λ) x C_n − (n+2λ−1) C_{n−1} from C_0 = 1,
/// C_1 = 2λx. Immutable once constructed; extended() returns a larger copy.
class GegenbauerFamily {
 public:
  GegenbauerFamily(Lambda index, unsigned max_degree);

  const Lambda& index() const { return index_; }
  unsigned max_degree() const { return static_cast<unsigned>(polys_.size()) - 1; }
  const DensePoly& poly(unsigned n) const;

  GegenbauerFamily extended(unsigned new_max_degree) const;

  /// Assembles a family from explicit polynomials, degree checks only. This
  /// exists for diagnostics (deliberately inconsistent families for fault
  /// injection); regular construction goes through the recurrence.
  static GegenbauerFamily from_parts(Lambda index, std::vector<DensePoly> polys);

 private:
  GegenbauerFamily(Lambda index, std::vector<DensePoly> polys, bool checked);

  Lambda index_;
  std::vector<DensePoly> polys_;
};

GegenbauerFamily build_family(const Lambda& index, unsigned max_degree);

/// Shared snapshots keyed by index, grown on demand. Callers keep whatever
/// snapshot they were handed; the cache only ever swaps in larger ones.
/// Not synchronized: meant for the single-threaded driver paths.
class FamilyCache {
 public:
  std::shared_ptr<const GegenbauerFamily> at_least(const Lambda& index, unsigned min_degree);
  void clear() { families_.clear(); }

 private:
  std::map<Rational, std::shared_ptr<const GegenbauerFamily>> families_;
};

FamilyCache& family_cache();

/// C_n(1) via the rising product ∏_{i=0}^{n−1}(2λ+i) / n!.
Rational endpoint_value(const Lambda& index, unsigned n);
double endpoint_value_f(const Lambda& index, unsigned n);

/// d/dx C_{n+1} at index λ equals 2λ C_n at index λ+1, coefficient for
/// coefficient.
bool check_derivative_identity(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                               unsigned n);
bool check_derivative_identity(const Lambda& index, unsigned n);

/// Index-raising recursion: (n+2) C_{n+2} = 2λ (x C_{n+1}^{+} − C_n^{+}),
/// where ^+ marks the raised index. Valid for n ≥ 0.
bool check_index_raise(const GegenbauerFamily& base, const GegenbauerFamily& lifted, unsigned n);
/// Index difference: (n+λ) C_n = λ (C_n^{+} − C_{n−2}^{+}), n ≥ 2.
bool check_index_difference(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                            unsigned n);
/// Shifted sum: C_n^{+} + C_{n−2}^{+} = 2x C_{n−1}^{+} + C_n, n ≥ 2.
bool check_shift_sum(const GegenbauerFamily& base, const GegenbauerFamily& lifted, unsigned n);

/// All three recursion identities at once; n ≥ 2.
bool check_recursion_identities(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                                unsigned n);
bool check_recursion_identities(const Lambda& index, unsigned n);

/// Three-term recurrence as a stored-coefficients identity:
/// (n+1) C_{n+1} = 2(n+λ) x C_n − (n+2λ−1) C_{n−1}, n ≥ 1. Trivial for
/// families built here, meaningful for assembled ones.
bool check_three_term(const GegenbauerFamily& family, unsigned n);

}  // namespace gegenorm
