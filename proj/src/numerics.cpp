#include "betacoal/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace betacoal {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kStirlingMin = 10.0;

// zeta(k) - 1 for k = 2..30
constexpr std::array<double, 29> kZetaMinusOne = {
    6.44934066848226406066e-01, 2.02056903159594292152e-01,
    8.23232337111381856642e-02, 3.69277551433699266492e-02,
    1.73430619844491401560e-02, 8.34927738192282713203e-03,
    4.07735619794433960111e-03, 2.00839282608221425530e-03,
    9.94575127818085255593e-04, 4.94188604119464528625e-04,
    2.46086553308048319906e-04, 1.22713347578489145439e-04,
    6.12481350587048276653e-05, 3.05882363070204932689e-05,
    1.52822594086518709648e-05, 7.63719763789976256827e-06,
    3.81729326499984021842e-06, 1.90821271655393897155e-06,
    9.53962033872796212006e-07, 4.76932986787806446824e-07,
    2.38450502727733004353e-07, 1.19219925965311063718e-07,
    5.96081890512594800969e-08, 2.98035035146522792822e-08,
    1.49015548283650426809e-08, 7.45071178983543006094e-09,
    3.72533402478845728320e-09, 1.86265972351304914216e-09,
    9.31327432419668165620e-10,
};

// Asymptotic correction sum_j B_2j / (2j (2j-1) z^(2j-1)), z >= 10.
double stirling_correction(double z) {
  const double r = 1.0 / z;
  const double r2 = r * r;
  return r * (1.0 / 12.0 +
              r2 * (-1.0 / 360.0 +
                    r2 * (1.0 / 1260.0 +
                          r2 * (-1.0 / 1680.0 +
                                r2 * (1.0 / 1188.0 +
                                      r2 * (-691.0 / 360360.0 +
                                            r2 * (1.0 / 156.0)))))));
}

double log_gamma_stirling(double z) {
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + stirling_correction(z);
}

// ln Gamma(2 + e) by its Taylor series, |e| <= 0.25.
double log_gamma_two_plus(double e) {
  double sum = (1.0 - kEulerGamma) * e;
  double power = -e;
  for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
    power *= -e;
    const double term = kZetaMinusOne[i] * power / static_cast<double>(i + 2);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double AlphaParams::sigma() const { return std::pow(sigma_alpha, 1.0 / alpha); }

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("log_gamma: argument must be positive and finite, got " +
                            std::to_string(x));
  }
  if (x == 1.0 || x == 2.0) return 0.0;
  if (std::abs(x - 2.0) <= 0.25) return log_gamma_two_plus(x - 2.0);
  if (std::abs(x - 1.0) <= 0.25) return log_gamma_two_plus(x - 1.0) - std::log1p(x - 1.0);
  if (x >= kStirlingMin) return log_gamma_stirling(x);

  // Shift up with Gamma(x) = Gamma(x + s) / (x (x+1) ... (x+s-1)).
  double product = 1.0;
  double z = x;
  while (z < kStirlingMin) {
    product *= z;
    z += 1.0;
  }
  return log_gamma_stirling(z) - std::log(product);
}

double log_gamma_ratio(double x, double a) {
  if (!(x > 0.0) || !(x + a > 0.0)) {
    throw std::domain_error("log_gamma_ratio: arguments must be positive");
  }
  const double lo = std::min(x, x + a);
  if (lo < kStirlingMin || std::abs(a) > 0.5 * x) {
    return log_gamma(x + a) - log_gamma(x);
  }
  return (x - 0.5) * std::log1p(a / x) + a * std::log(x + a) - a +
         stirling_correction(x + a) - stirling_correction(x);
}

double gamma_fn(double x) { return std::exp(log_gamma(x)); }

AlphaParams make_alpha_params(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 1.0 && alpha < 2.0)) {
    throw std::invalid_argument("alpha must lie in the open interval (1, 2), got " +
                                std::to_string(alpha));
  }
  AlphaParams p;
  p.alpha = alpha;
  p.gamma_const = 1.0 / (alpha - 1.0);

  const double lg_alpha = log_gamma(alpha);
  const double lg_two_minus = log_gamma(2.0 - alpha);
  const double base = std::exp(lg_alpha) * alpha * (alpha - 1.0);
  p.c1 = base / (2.0 - alpha);
  p.c2 = std::exp(lg_alpha + std::log(alpha) + (1.0 + 1.0 / alpha) * std::log(alpha - 1.0) -
                  lg_two_minus / alpha);
  const double quad = 1.0 + alpha - alpha * alpha;
  if (quad > 0.0) {
    p.c_l52 = std::exp(-(std::log(quad) + lg_two_minus) / alpha);
  }
  p.d_norm = alpha * std::exp(-lg_two_minus);
  p.sigma_alpha = std::exp(lg_two_minus) * std::cos(std::numbers::pi * alpha / 2.0) / (1.0 - alpha);
  return p;
}

AlphaParams make_alpha_params(AlphaTag tag) {
  AlphaParams p;
  switch (tag) {
    case AlphaTag::golden:
      p = make_alpha_params(kGoldenRatio);
      // 1 + alpha - alpha^2 vanishes exactly at the golden ratio.
      p.c_l52.reset();
      break;
    case AlphaTag::sqrt2:
      p = make_alpha_params(kSqrt2);
      break;
    case AlphaTag::none:
      throw std::invalid_argument("make_alpha_params: AlphaTag::none carries no value");
  }
  p.tag = tag;
  return p;
}

std::complex<double> stable_cf_exponent(double u, const AlphaParams& params) {
  if (u == 0.0) return {0.0, 0.0};
  const double sign = u > 0.0 ? 1.0 : -1.0;
  const double magnitude = params.sigma_alpha * std::pow(std::abs(u), params.alpha);
  const double skew = std::tan(std::numbers::pi * params.alpha / 2.0);
  return {-magnitude, -magnitude * sign * skew};
}

}  // namespace betacoal
