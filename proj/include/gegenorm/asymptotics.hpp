#pragma once

#include <optional>
#include <span>

namespace gegenorm {

/// Γ(x). Throws std::domain_error at the poles (non-positive integers).
double gamma_real(double x);
/// B(x, y) = Γ(x)Γ(y)/Γ(x+y), routed through log-gamma when the direct
/// product would overflow.
double beta_real(double x, double y);

/// Two-term large-z truncation of Γ(z+alpha)/Γ(z+beta):
///   z^(alpha−beta) (1 + (alpha−beta)(alpha+beta−1)/(2z)).
/// Exact for (alpha, beta) = (1, 0). Requires z > 0 and alpha, beta ≥ 0.
double tricomi_ratio(double z, double alpha, double beta);

/// Two-term estimate of the squared endpoint value [C_n(1)]² for index
/// lambda > 0: (n^(4λ−2) + 2λ(2λ−1) n^(4λ−3)) / Γ(2λ)². The neglected term
/// is of order n^(4λ−4).
double endpoint_sq_asymptotic(double lambda, unsigned n);

enum class NormKind { plain, weighted };

/// Power-law model for a norm at index lambda+1, stated in the base index
/// lambda. strict_bound marks the one formula that is an upper bound rather
/// than an asymptote (the weighted case below index 1).
struct AsymptoticModel {
  double lambda = 0;
  double leading_coeff = 0;
  double leading_exp = 0;
  std::optional<double> correction_coeff;
  std::optional<double> correction_exp;
  double error_exp = 0;
  bool strict_bound = false;
};

/// Model plus its evaluation at one n. stated_n is the n the formulas are
/// stated in; degree is the degree of the polynomial the value refers to at
/// index lambda+1. The two differ (by 0, 1 or 2) depending on the branch,
/// which is exactly the off-by-two trap the metadata exists to disarm.
struct AsymptoticEstimate {
  AsymptoticModel model;
  double value = 0;
  unsigned stated_n = 0;
  unsigned degree = 0;
};

/// The norm asymptote at index lambda+1 for base index lambda > 0, n ≥ 3.
/// Plain norms: below 1 the one-term form for the degree-n polynomial with
/// error exponent δ(λ) = max(4λ−1, 2λ); from 1 upward the two-term form for
/// degree n−2 with error exponent 4λ−2 (at exactly 1 the correction term is
/// zero; the genuine λ=1 expansion carries a logarithmic factor instead and
/// lives in the closed forms). Weighted norms: degree n−1; below 1 a strict
/// bound, above 1 a one-term asymptote; index exactly 1 has a pole and is
/// rejected.
AsymptoticEstimate norm_asymptote(double lambda, unsigned n, NormKind kind);

/// Strict upper bound B(1−λ, ½) 2^(1−2λ)/Γ(λ)² · n^(2λ−2) on the plain norm
/// at index lambda ∈ (0,1) itself (not the lifted index).
double szego_bound(double lambda, unsigned n);

struct SlopeFit {
  double exponent = 0;
  double intercept = 0;
  double residual = 0;  // root-mean-square misfit in log space
};

/// Least-squares slope of log(error) against log(n). Needs at least 4
/// strictly increasing n values and positive errors.
SlopeFit fit_error_exponent(std::span<const unsigned> ns, std::span<const double> errors);

}  // namespace gegenorm
