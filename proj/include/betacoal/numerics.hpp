#ifndef BETACOAL_NUMERICS_HPP_
#define BETACOAL_NUMERICS_HPP_

#include <complex>
#include <optional>

namespace betacoal {

/// Regime boundaries that can only be selected symbolically.
enum class AlphaTag { none, golden, sqrt2 };

/// (1 + sqrt 5) / 2.
inline constexpr double kGoldenRatio = 1.6180339887498948482;
inline constexpr double kSqrt2 = 1.4142135623730950488;

/*
 * Validated index alpha of a Beta(2-alpha, alpha)-coalescent together with
 * every constant derived from it. Build through make_alpha_params().
 *
 *   gamma_const  1 / (alpha - 1), the mean of the V law
 *   c1           Gamma(alpha) alpha (alpha-1) / (2-alpha), LLN centering of L_n
 *   c2           Gamma(alpha) alpha (alpha-1)^(1+1/alpha) / Gamma(2-alpha)^(1/alpha)
 *   c_l52        ((1+alpha-alpha^2) Gamma(2-alpha))^(-1/alpha); empty when
 *                1+alpha-alpha^2 <= 0 (alpha at or above the golden ratio)
 *   d_norm       alpha / Gamma(2-alpha), normalizer of the V law
 *   sigma_alpha  sigma^alpha of the maximally skewed stable law, chosen so
 *                that P(stable < -x) x^alpha -> 1
 */
struct AlphaParams {
  double alpha = 1.5;
  AlphaTag tag = AlphaTag::none;
  double gamma_const = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> c_l52;
  double d_norm = 0.0;
  double sigma_alpha = 0.0;

  /// Stable scale sigma = sigma_alpha^(1/alpha).
  double sigma() const;
};

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// ln Gamma(x + a) - ln Gamma(x), accurate when x is large and a is small
/// relative to x. Requires x > 0 and x + a > 0.
double log_gamma_ratio(double x, double a);

/// Gamma(x) for x > 0, through log_gamma.
double gamma_fn(double x);

/// Throws std::invalid_argument unless 1 < alpha < 2 and finite.
AlphaParams make_alpha_params(double alpha);
AlphaParams make_alpha_params(AlphaTag tag);

/// Log characteristic exponent psi(u) of the normalized maximally skewed
/// stable law: -sigma^alpha |u|^alpha (1 + i sign(u) tan(pi alpha / 2)).
std::complex<double> stable_cf_exponent(double u, const AlphaParams& params);

}  // namespace betacoal

#endif  // BETACOAL_NUMERICS_HPP_
