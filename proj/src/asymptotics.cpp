#include "gegenorm/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gegenorm {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double delta_exponent(double lambda) { return std::max(4 * lambda - 1, 2 * lambda); }

}  // namespace

double gamma_real(double x) {
  if (is_nonpositive_integer(x))
    throw std::domain_error("gamma pole at " + std::to_string(x));
  return std::tgamma(x);
}

double beta_real(double x, double y) {
  if (is_nonpositive_integer(x) || is_nonpositive_integer(y))
    throw std::domain_error("beta pole: argument is a non-positive integer");
  double s = x + y;
  if (is_nonpositive_integer(s)) return 0.0;  // 1/Γ(s) vanishes, the arguments don't
  if (x > 0 && y > 0) {
    if (s < 170.0) return std::tgamma(x) * std::tgamma(y) / std::tgamma(s);
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(s));
  }
  int sx, sy, ss;
  double lx = lgamma_r(x, &sx);
  double ly = lgamma_r(y, &sy);
  double ls = lgamma_r(s, &ss);
  return sx * sy * ss * std::exp(lx + ly - ls);
}

double tricomi_ratio(double z, double alpha, double beta) {
  if (!(z > 0)) throw std::domain_error("tricomi_ratio needs z > 0");
  if (alpha < 0 || beta < 0) throw std::domain_error("tricomi_ratio needs alpha, beta >= 0");
  double d = alpha - beta;
  return std::pow(z, d) * (1.0 + d * (alpha + beta - 1.0) / (2.0 * z));
}

double endpoint_sq_asymptotic(double lambda, unsigned n) {
  if (!(lambda > 0)) throw std::domain_error("endpoint asymptotic needs a positive index");
  if (n < 1) throw std::invalid_argument("endpoint asymptotic needs n >= 1");
  double g = gamma_real(2 * lambda);
  double nn = n;
  return (std::pow(nn, 4 * lambda - 2) +
          2 * lambda * (2 * lambda - 1) * std::pow(nn, 4 * lambda - 3)) /
         (g * g);
}

AsymptoticEstimate norm_asymptote(double lambda, unsigned n, NormKind kind) {
  if (!(lambda > 0)) throw std::domain_error("asymptotic formulas need a positive index");
  if (n < 3) throw std::invalid_argument("asymptotic formulas start at n = 3");

  AsymptoticEstimate est;
  AsymptoticModel& m = est.model;
  m.lambda = lambda;
  est.stated_n = n;

  double g = gamma_real(2 * lambda + 1);
  double gg = g * g;

  if (kind == NormKind::plain) {
    m.leading_coeff = 1.0 / (4 * lambda * gg);
    m.leading_exp = 4 * lambda;
    if (lambda < 1) {
      m.error_exp = delta_exponent(lambda);
      est.degree = n;
    } else {
      m.correction_coeff = (lambda - 1) / gg;
      m.correction_exp = 4 * lambda - 1;
      m.error_exp = 4 * lambda - 2;
      est.degree = n - 2;
    }
  } else {
    if (lambda == 1)
      throw std::domain_error("weighted asymptote has a pole at index 1");
    est.degree = n - 1;
    if (lambda < 1) {
      double gl = gamma_real(lambda + 1);
      m.leading_coeff = beta_real(1 - lambda, 0.5) / (gl * gl * std::pow(2.0, 1 + 2 * lambda));
      m.leading_exp = 2 * lambda;
      m.error_exp = delta_exponent(lambda) - 1;
      m.strict_bound = true;
    } else {
      m.leading_coeff = (2 * lambda - 1) / (4 * (lambda - 1) * gg);
      m.leading_exp = 4 * lambda - 2;
      m.error_exp = delta_exponent(lambda - 1) + 2;
    }
  }

  double nn = n;
  est.value = m.leading_coeff * std::pow(nn, m.leading_exp);
  if (m.correction_coeff)
    est.value += *m.correction_coeff * std::pow(nn, *m.correction_exp);
  return est;
}

double szego_bound(double lambda, unsigned n) {
  if (!(lambda > 0 && lambda < 1))
    throw std::domain_error("the norm bound holds for indices strictly between 0 and 1");
  if (n < 1) throw std::invalid_argument("the norm bound needs n >= 1");
  double g = gamma_real(lambda);
  return beta_real(1 - lambda, 0.5) * std::pow(2.0, 1 - 2 * lambda) / (g * g) *
         std::pow(static_cast<double>(n), 2 * lambda - 2);
}

SlopeFit fit_error_exponent(std::span<const unsigned> ns, std::span<const double> errors) {
  if (ns.size() != errors.size())
    throw std::invalid_argument("slope fit: mismatched sequence lengths");
  if (ns.size() < 4) throw std::invalid_argument("slope fit needs at least 4 points");
  for (std::size_t i = 0; i + 1 < ns.size(); ++i)
    if (ns[i] >= ns[i + 1]) throw std::invalid_argument("slope fit needs strictly increasing n");
  for (double e : errors)
    if (!(e > 0)) throw std::domain_error("slope fit needs positive errors");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    double x = std::log(static_cast<double>(ns[i]));
    double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  SlopeFit fit;
  fit.exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  fit.intercept = (sy - fit.exponent * sx) / count;
  double ss = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    double x = std::log(static_cast<double>(ns[i]));
    double r = std::log(errors[i]) - (fit.intercept + fit.exponent * x);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);
  return fit;
}

}  // namespace gegenorm
