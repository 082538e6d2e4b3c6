#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gegenorm/gegenbauer.hpp"

namespace gegenorm {

/// Exact table of squared L² norms over [0,1] for one index: norms[k] is the
/// norm of the degree-k polynomial, prefix[n] = Σ_{k<n} (λ+k)/λ · norms[k].
/// prefix always has one more entry than norms, with prefix[0] = 0.
struct NormTable {
  Rational lambda;
  std::vector<Rational> norms;
  std::vector<Rational> prefix;

  unsigned max_degree() const { return static_cast<unsigned>(norms.size()) - 1; }
};

/// Same layout in double precision. The index stays exact so serialization
/// and re-lifting agree with the exact pipeline about which table this is.
/// Prefix sums are accumulated with error compensation; see lift_norms.
struct NormTableF {
  Rational lambda;
  std::vector<double> norms;
  std::vector<double> prefix;

  unsigned max_degree() const { return static_cast<unsigned>(norms.size()) - 1; }
};

using EndpointFn = std::function<Rational(unsigned)>;
using EndpointFnF = std::function<double(unsigned)>;

/// The product-formula endpoint values C_n(1) as a reusable provider.
EndpointFn endpoint_provider(const Lambda& index);
EndpointFnF endpoint_provider_f(const Lambda& index);

/// Norms by direct exact integration of every polynomial, degrees 0..up_to
/// (the whole family when omitted).
NormTable norm_table_oracle(const GegenbauerFamily& family,
                            std::optional<unsigned> up_to = std::nullopt);

NormTableF to_float(const NormTable& table);

/// The index-raising recursion: from the table at λ (degrees 0..n_max) to the
/// table at λ+1 (degrees 0..n_max−2). Degrees 0 and 1 of the output are
/// seeded from the first two polynomials directly; where the recursion
/// reaches them again it must agree (exactly here, to 1e−9 relative in the
/// float overload) or a logic_error reports the internal inconsistency.
NormTable lift_norms(const NormTable& base, const EndpointFn& endpoint, unsigned n_max);
NormTableF lift_norms(const NormTableF& base, const EndpointFnF& endpoint, unsigned n_max);

/// Dette's sum-of-squares identity at degree n (n ≥ 1), checked as an exact
/// polynomial identity in x:
///   (n/2λ)² C_n² + (1−x²) (C_{n−1}^{+})² = Σ_{k<n} (λ+k)/λ · C_k².
bool dette_check(const GegenbauerFamily& base, const GegenbauerFamily& lifted, unsigned n);
bool dette_check(const Lambda& index, unsigned n);

/// Weighted norm ‖√(1−x²) C_{n−1}^{+}‖² expressed through base-index norms
/// alone. lambda records the base index; the polynomial lives at index λ+1
/// with degree n−1.
struct WeightedNorm {
  Rational lambda;
  unsigned n = 0;
  Rational value;
};

/// Closed form for the weighted norm from base norms at n and n+1; n ≥ 1.
WeightedNorm weighted_norm_closed(const NormTable& base, const EndpointFn& endpoint, unsigned n);
double weighted_norm_closed_f(const NormTableF& base, const EndpointFnF& endpoint, unsigned n);

/// Consistency of the two routes to ‖C_{n−2}^{(λ+1)}‖²: the prefix-sum
/// recursion against the four-term form that replaces the prefix sum with
/// norms at n and n+1. Needs base norms through n+1; n ≥ 2.
bool combined_identity_check(const NormTable& base, unsigned n);

/// ∫ (C_n^{+})² − (C_{n−2}^{+})² = (n+λ)/(2λ²) ([C_n(1)]² + (2λ−1)‖C_n‖²),
/// n ≥ 2.
bool norm_difference_identity_check(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                                    unsigned n);
/// ∫ x²(C_{n+1}^{+})² + (C_n^{+})² + (1/2λ)∫(1−x²)(C_{n+1}^{+})² against the
/// endpoint and norm at n+2; n ≥ 0.
bool squares_sum_identity_check(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                                unsigned n);
/// ∫ x²(C_{n+1}^{+})² − (C_n^{+})² = (n+2)/(4λ²) ([C_{n+2}(1)]² − (n+3)‖C_{n+2}‖²),
/// n ≥ 0.
bool moment_difference_identity_check(const GegenbauerFamily& base, const GegenbauerFamily& lifted,
                                      unsigned n);

/// ‖C_n‖² at index 1 as the odd harmonic sum Σ_{k=0}^{n} 1/(2k+1).
Rational closed_form_lambda1(unsigned n);

/// Index-2 closed forms for the degree n−2 polynomial (n ≥ 2): the weighted
/// norm ‖√(1−x²) C_{n−2}‖² and the plain norm ‖C_{n−2}‖², both through the
/// odd harmonic sum H(n) = 2 Σ_{k=1}^{n} 1/(2k−1).
struct ClosedFormLambda2 {
  Rational weighted;
  Rational plain;
};
ClosedFormLambda2 closed_form_lambda2(unsigned n);

enum class TableSource { oracle, recursion, closed_form };

/// Double-precision base table: the closed forms at indices 1 and 2, the
/// exact oracle rounded entrywise otherwise.
NormTableF float_base_table(const Lambda& index, unsigned max_degree,
                            TableSource* source = nullptr);

/// Double-precision table for any valid index, routed: closed forms at 1 and
/// 2; one recursion step from the base table at λ−1 when that index is valid;
/// the rounded oracle otherwise.
NormTableF float_norm_table(const Lambda& index, unsigned max_degree,
                            TableSource* source = nullptr);

/// Degree cap applied by the drivers to exact-mode requests.
inline constexpr unsigned kDefaultDegreeBudget = 128;

}  // namespace gegenorm
