#include "betacoal/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace betacoal {

namespace {

void require_n(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("normalization needs n >= 2");
}

double length_scale(std::int64_t n, const RegimeClassification& regime) {
  const double x = static_cast<double>(n);
  switch (regime.theorem1_case) {
    case Regime::I:
      return std::pow(x, regime.length_scale_exponent);
    case Regime::II:
      return std::pow(std::log(x), regime.length_log_power);
    case Regime::III:
      break;
  }
  return 1.0;
}

double length_limit_case1(RandomStream& stream, const AlphaParams& params) {
  const double a = params.alpha;
  return params.c2 * sample_stable(stream, params) / std::pow(1.0 + a - a * a, 1.0 / a);
}

}  // namespace

RegimeClassification classify_regime(const AlphaParams& params) {
  const double a = params.alpha;
  RegimeClassification out;
  if (params.tag == AlphaTag::golden) {
    out.theorem1_case = Regime::II;
  } else {
    out.theorem1_case = a < kGoldenRatio ? Regime::I : Regime::III;
  }
  if (params.tag == AlphaTag::sqrt2) {
    out.corollary_case = Regime::II;
  } else {
    out.corollary_case = a < kSqrt2 ? Regime::I : Regime::III;
  }
  out.centering_exponent = 2.0 - a;
  if (out.theorem1_case == Regime::I) out.length_scale_exponent = 1.0 / a + 1.0 - a;
  if (out.theorem1_case == Regime::II) out.length_log_power = 1.0 / a;
  out.sites_scale_exponent =
      out.corollary_case == Regime::I ? 1.0 / a + 1.0 - a : 1.0 - a / 2.0;
  return out;
}

double length_centering(std::int64_t n, const AlphaParams& params) {
  return params.c1 * std::pow(static_cast<double>(n), 2.0 - params.alpha);
}

double normalize_length(double l_n, std::int64_t n, const AlphaParams& params) {
  require_n(n);
  const RegimeClassification regime = classify_regime(params);
  return (l_n - length_centering(n, params)) / length_scale(n, regime);
}

double normalize_sites(std::int64_t s_n, std::int64_t n, double theta, const AlphaParams& params) {
  require_n(n);
  if (!(theta > 0.0)) throw std::invalid_argument("normalize_sites: theta must be positive");
  const RegimeClassification regime = classify_regime(params);
  const double scale = std::pow(static_cast<double>(n), regime.sites_scale_exponent);
  return (static_cast<double>(s_n) - theta * length_centering(n, params)) / scale;
}

std::vector<double> reference_sample(const RegimeClassification& regime, LimitQuantity which,
                                     double theta, std::int64_t m, RandomStream& stream,
                                     const AlphaParams& params) {
  if (m < 0) throw std::invalid_argument("reference_sample: negative size");
  if (which == LimitQuantity::sites && !(theta > 0.0)) {
    throw std::invalid_argument("reference_sample: theta must be positive");
  }
  if (which == LimitQuantity::length && regime.theorem1_case == Regime::III) {
    throw std::invalid_argument("reference_sample: no closed-form length limit in case III");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m));
  const double normal_scale = std::sqrt(theta * params.c1);
  for (std::int64_t i = 0; i < m; ++i) {
    if (which == LimitQuantity::length) {
      out.push_back(regime.theorem1_case == Regime::I
                        ? length_limit_case1(stream, params)
                        : params.c2 * sample_stable(stream, params));
      continue;
    }
    switch (regime.corollary_case) {
      case Regime::I:
        out.push_back(theta * length_limit_case1(stream, params));
        break;
      case Regime::II: {
        const double z = sample_normal(stream);
        out.push_back(normal_scale * z + theta * length_limit_case1(stream, params));
        break;
      }
      case Regime::III:
        out.push_back(normal_scale * sample_normal(stream));
        break;
    }
  }
  return out;
}

double lemma52_statistic_from(std::span<const double> v, const AlphaParams& params) {
  const auto n = static_cast<std::int64_t>(v.size());
  if (n < 1) throw std::invalid_argument("lemma52_statistic: n must be positive");
  const bool golden = params.tag == AlphaTag::golden;
  if (!golden && !params.c_l52) {
    throw std::invalid_argument("lemma52_statistic: alpha must not exceed the golden ratio");
  }
  const double a = params.alpha;
  double sum = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    sum += std::pow(static_cast<double>(k), 1.0 - a) * (v[k - 1] - params.gamma_const);
  }
  const double x = static_cast<double>(n);
  if (golden) return n == 1 ? sum : sum * std::pow(std::log(x), -1.0 / a);
  return sum * std::pow(x, a - 1.0 - 1.0 / a);
}

double lemma52_statistic(std::int64_t n, RandomStream& stream, const Model& model) {
  if (n < 1) throw std::invalid_argument("lemma52_statistic: n must be positive");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = static_cast<double>(sample_v(stream, model));
  return lemma52_statistic_from(v, model.params());
}

std::vector<double> lemma51_partial_sums_from(double beta, std::span<const double> v,
                                              const AlphaParams& params) {
  std::vector<double> out;
  out.reserve(v.size());
  double sum = 0.0;
  for (std::size_t k = 1; k <= v.size(); ++k) {
    sum += std::pow(static_cast<double>(k), -beta) * (v[k - 1] - params.gamma_const);
    out.push_back(sum);
  }
  return out;
}

std::vector<double> lemma51_partial_sums(double beta, std::int64_t n, RandomStream& stream,
                                         const Model& model) {
  if (n < 1) throw std::invalid_argument("lemma51_partial_sums: n must be positive");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = static_cast<double>(sample_v(stream, model));
  return lemma51_partial_sums_from(beta, v, model.params());
}

double tail_oscillation(std::span<const double> trajectory) {
  if (trajectory.empty()) return 0.0;
  const auto tail = trajectory.subspan(trajectory.size() / 2);
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  return *hi - *lo;
}

}  // namespace betacoal
