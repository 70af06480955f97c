#include "betacoal/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace betacoal {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return mix64(seed ^ h);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(mix64(mix64(seed) ^ mix64(stream_id + 0x9E3779B97F4A7C15ULL))) {}

double RandomStream::uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

std::int64_t sample_v(RandomStream& stream, const Model& model) {
  return model.v().invert_tail(stream.uniform());
}

namespace {

std::int64_t sample_residual(std::int64_t m, RandomStream& stream, const Model& model,
                             JumpDiagnostics* diag) {
  const AlphaParams& p = model.params();
  const double md = static_cast<double>(m);
  const double shift = p.alpha - 1.0;

  // Weights (P_{m,m-j} - P(V=j))^+ are positive exactly for j < k_m.
  std::vector<double> cumulative;
  cumulative.reserve(16);
  double log_ratio = std::log(md / (md - 1.0));
  double v_mass = p.alpha / 2.0;  // P(V = 1)
  double total = 0.0;
  for (std::int64_t j = 1; j <= m - 1; ++j) {
    const double jd = static_cast<double>(j);
    log_ratio += std::log1p(-shift / (md + shift - jd));
    if (log_ratio <= 0.0) break;
    total += v_mass * std::expm1(log_ratio);
    cumulative.push_back(total);
    v_mass *= (jd + 1.0 - p.alpha) / (jd + 2.0);
  }
  if (diag != nullptr) ++diag->residual_builds;

  if (!(total > 0.0) || !std::isfinite(total)) {
    if (diag != nullptr) ++diag->fallbacks;
    const JumpLaw law(m, p);
    const double u = stream.uniform();
    double acc = 0.0;
    for (std::int64_t k = 1; k <= m - 1; ++k) {
      acc += law.pmf(k);
      if (u < acc) return k;
    }
    return m - 1;
  }
  const double target = stream.uniform() * total;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  const auto index = std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                              static_cast<std::ptrdiff_t>(cumulative.size()) - 1);
  return static_cast<std::int64_t>(index) + 1;
}

}  // namespace

UVPair sample_uv_pair(std::int64_t m, RandomStream& stream, const Model& model,
                      JumpDiagnostics* diag) {
  if (m < 2) throw std::invalid_argument("sample_uv_pair: m must be at least 2");
  if (diag != nullptr) ++diag->calls;
  const std::int64_t v = sample_v(stream, model);
  if (v <= m - 1) {
    const double log_ratio = log_weight_ratio(m, v, model.params());
    if (log_ratio >= 0.0 || stream.uniform() < std::exp(log_ratio)) return {v, v};
  }
  if (diag != nullptr) ++diag->rejections;
  return {sample_residual(m, stream, model, diag), v};
}

std::int64_t sample_jump(std::int64_t m, RandomStream& stream, const Model& model,
                         JumpDiagnostics* diag) {
  return sample_uv_pair(m, stream, model, diag).u;
}

JumpInversionSampler::JumpInversionSampler(std::int64_t m, const AlphaParams& params) {
  const auto pmf = JumpLaw(m, params).pmf_table();
  cdf_.resize(pmf.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    acc += pmf[i];
    cdf_[i] = acc;
  }
}

std::int64_t JumpInversionSampler::operator()(RandomStream& stream) const {
  const double u = stream.uniform() * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto index =
      std::min<std::ptrdiff_t>(it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1);
  return static_cast<std::int64_t>(index) + 1;
}

double sample_exponential(double rate, RandomStream& stream) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::domain_error("sample_exponential: rate must be positive and finite");
  }
  return -std::log(stream.uniform()) / rate;
}

double sample_normal(RandomStream& stream) {
  const double radius = std::sqrt(-2.0 * std::log(stream.uniform()));
  return radius * std::cos(2.0 * std::numbers::pi * stream.uniform());
}

std::int64_t sample_poisson(double mean, RandomStream& stream) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::domain_error("sample_poisson: mean must be nonnegative and finite");
  }
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    const double u = stream.uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t k = 0;
    while (u > cdf) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
      if (p == 0.0 && cdf < u) break;  // u in the last ulp above the summed mass
    }
    return k;
  }
  // PTRS: W. Hormann, "The transformed rejection method for generating
  // Poisson random variables", Insurance: Math. and Econ. 12 (1993).
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = stream.uniform() - 0.5;
    const double v = stream.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b);
    const double rhs = -mean + k * log_mean - log_gamma(k + 1.0);
    if (lhs <= rhs) return static_cast<std::int64_t>(k);
  }
}

double sample_stable(RandomStream& stream, const AlphaParams& params) {
  const double alpha = params.alpha;
  const double skew = -1.0;
  const double t = skew * std::tan(std::numbers::pi * alpha / 2.0);
  const double shift = std::atan(t) / alpha;
  const double scale = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));

  const double w = std::numbers::pi * (stream.uniform() - 0.5);
  const double e = -std::log(stream.uniform());
  const double aw = alpha * (w + shift);
  const double x = scale * std::sin(aw) / std::pow(std::cos(w), 1.0 / alpha) *
                   std::pow(std::cos(w - aw) / e, (1.0 - alpha) / alpha);
  return params.sigma() * x;
}

}  // namespace betacoal
