#include "betacoal/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace betacoal {

namespace {

constexpr std::int64_t kTelescopeMax = 64;

void require_m(std::int64_t m, const char* what) {
  if (m < 2) {
    throw std::invalid_argument(std::string(what) + ": m must be at least 2, got " +
                                std::to_string(m));
  }
}

double log_v_pmf(std::int64_t k, const AlphaParams& p) {
  const double x = static_cast<double>(k) + 2.0;
  return std::log(p.d_norm) + log_gamma_ratio(x, -1.0 - p.alpha);
}

double log_v_tail(std::int64_t k, const AlphaParams& p) {
  if (k <= 1) return 0.0;
  const double x = static_cast<double>(k) + 1.0;
  return log_gamma_ratio(x, -p.alpha) - log_gamma(2.0 - p.alpha);
}

double log_merge_rate(std::int64_t m, std::int64_t k, const AlphaParams& p) {
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  const double log_binom = log_gamma(md + 1.0) - log_gamma(kd + 1.0) - log_gamma(md - kd + 1.0);
  const double log_beta = log_gamma(kd - p.alpha) + log_gamma(md - kd + p.alpha) - log_gamma(md);
  return log_binom + log_beta - log_gamma(2.0 - p.alpha) - log_gamma(p.alpha);
}

// Below this size the rates are formed as products of O(1) factors, which
// keeps them within a few ulps; above it the log-Gamma route is used.
constexpr std::int64_t kProductLimit = 64;

// m / (k! (m-k)!) prod_{j=2}^{k-1} (j-alpha) prod_{j=0}^{m-k-1} (alpha+j).
double product_merge_rate(std::int64_t m, std::int64_t k, const AlphaParams& p) {
  double r = static_cast<double>(m) / static_cast<double>(k);
  for (std::int64_t j = 2; j <= k - 1; ++j) {
    r *= (static_cast<double>(j) - p.alpha) / static_cast<double>(j);
  }
  for (std::int64_t j = 0; j <= m - k - 1; ++j) {
    r *= (p.alpha + static_cast<double>(j)) / static_cast<double>(j + 1);
  }
  return r;
}

// prod_{j=1}^{m-2} (alpha+j)/j.
double product_total_rate(std::int64_t m, const AlphaParams& p) {
  double r = 1.0;
  for (std::int64_t j = 1; j <= m - 2; ++j) {
    r *= (p.alpha + static_cast<double>(j)) / static_cast<double>(j);
  }
  return r;
}

double log_total_rate(std::int64_t m, const AlphaParams& p) {
  return log_gamma_ratio(static_cast<double>(m) - 1.0, p.alpha) - std::log(p.alpha) -
         log_gamma(p.alpha);
}

// Search a decreasing survival function: largest k with surv(k) > u,
// where surv(1) = 1 > u. The table holds surv(k) at index k for k < size.
template <class Survival>
std::int64_t invert_survival(double u, const std::vector<double>& table, Survival&& surv) {
  const auto size = static_cast<std::int64_t>(table.size());
  if (u >= table[2]) return 1;
  if (table[size - 1] <= u) {
    // First index in [1, size) whose value is <= u, minus one.
    auto it = std::partition_point(table.begin() + 1, table.end(),
                                   [u](double s) { return s > u; });
    return static_cast<std::int64_t>(it - table.begin()) - 1;
  }
  std::int64_t lo = size - 1;
  std::int64_t hi = 2 * lo;
  while (surv(hi) > u) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (surv(mid) > u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

double merge_rate(std::int64_t m, std::int64_t k, const AlphaParams& params) {
  if (k < 2 || k > m) {
    throw std::domain_error("merge_rate: k must lie in [2, m], got k=" + std::to_string(k) +
                            " m=" + std::to_string(m));
  }
  if (m <= kProductLimit) return product_merge_rate(m, k, params);
  return std::exp(log_merge_rate(m, k, params));
}

double total_rate(std::int64_t m, const AlphaParams& params) {
  require_m(m, "total_rate");
  if (m <= kProductLimit) return product_total_rate(m, params);
  return std::exp(log_total_rate(m, params));
}

double total_rate_by_summation(std::int64_t m, const AlphaParams& params) {
  require_m(m, "total_rate_by_summation");
  double sum = 0.0;
  // Smallest terms first.
  for (std::int64_t k = m; k >= 2; --k) sum += merge_rate(m, k, params);
  return sum;
}

JumpLaw::JumpLaw(std::int64_t m, const AlphaParams& params)
    : m_(m), params_(params), log_total_(0.0) {
  require_m(m, "jump_law");
  log_total_ = log_total_rate(m, params);
}

double JumpLaw::pmf(std::int64_t k) const {
  if (k < 1 || k > m_ - 1) return 0.0;
  if (m_ <= kProductLimit) {
    return product_merge_rate(m_, k + 1, params_) / product_total_rate(m_, params_);
  }
  return std::exp(log_merge_rate(m_, k + 1, params_) - log_total_);
}

double JumpLaw::tail(std::int64_t k) const {
  if (k <= 1) return 1.0;
  double sum = 0.0;
  for (std::int64_t j = m_ - 1; j >= k; --j) sum += pmf(j);
  return sum;
}

double JumpLaw::mean() const {
  double sum = 0.0;
  for (std::int64_t j = m_ - 1; j >= 1; --j) sum += static_cast<double>(j) * pmf(j);
  return sum;
}

std::vector<double> JumpLaw::pmf_table() const {
  std::vector<double> table(static_cast<std::size_t>(m_ - 1));
  for (std::int64_t k = 1; k <= m_ - 1; ++k) table[static_cast<std::size_t>(k - 1)] = pmf(k);
  return table;
}

JumpLaw jump_law(std::int64_t m, const AlphaParams& params) { return JumpLaw(m, params); }

double v_pmf(std::int64_t k, const AlphaParams& params) {
  if (k < 1) return 0.0;
  return std::exp(log_v_pmf(k, params));
}

double v_tail(std::int64_t k, const AlphaParams& params) {
  if (k <= 1) return 1.0;
  return std::exp(log_v_tail(k, params));
}

VLaw::VLaw(const AlphaParams& params)
    : params_(params),
      tail_(static_cast<std::size_t>(kTableSize)),
      delay_tail_(static_cast<std::size_t>(kTableSize)) {
  tail_[0] = 1.0;
  delay_tail_[0] = 1.0;
  for (std::int64_t k = 1; k < kTableSize; ++k) {
    const auto i = static_cast<std::size_t>(k);
    tail_[i] = v_tail(k, params_);
    delay_tail_[i] = static_cast<double>(k) * tail_[i];
  }
}

double VLaw::pmf(std::int64_t k) const { return v_pmf(k, params_); }

double VLaw::tail(std::int64_t k) const {
  if (k <= 1) return 1.0;
  if (k < kTableSize) return tail_[static_cast<std::size_t>(k)];
  return v_tail(k, params_);
}

std::int64_t VLaw::invert_tail(double u) const {
  return invert_survival(u, tail_, [this](std::int64_t k) { return v_tail(k, params_); });
}

std::int64_t VLaw::invert_delay_tail(double u) const {
  return invert_survival(u, delay_tail_, [this](std::int64_t k) {
    return static_cast<double>(k) * v_tail(k, params_);
  });
}

VLaw v_law(const AlphaParams& params) { return VLaw(params); }

double log_weight_ratio(std::int64_t m, std::int64_t k, const AlphaParams& params) {
  if (k < 1 || k > m - 1) {
    throw std::domain_error("log_weight_ratio: k must lie in [1, m-1]");
  }
  const double md = static_cast<double>(m);
  const double shift = params.alpha - 1.0;
  double sum = std::log(md / (md - 1.0));
  if (k <= kTelescopeMax) {
    // (m-j) / (m+alpha-1-j) = 1 - (alpha-1)/(m+alpha-1-j)
    for (std::int64_t j = 1; j <= k; ++j) {
      sum += std::log1p(-shift / (md + shift - static_cast<double>(j)));
    }
    return sum;
  }
  const double kd = static_cast<double>(k);
  return sum + log_gamma_ratio(md - kd, kd) - log_gamma_ratio(md + shift - kd, kd);
}

CouplingWeights coupling_weights(std::int64_t m, const AlphaParams& params) {
  require_m(m, "coupling_weights");
  CouplingWeights w;
  w.m = m;
  const double md = static_cast<double>(m);
  w.d_m = params.d_norm * md / (md - 1.0);
  w.d_mk.resize(static_cast<std::size_t>(m - 1));
  w.accept_prob.resize(static_cast<std::size_t>(m - 1));
  const double shift = params.alpha - 1.0;
  double log_ratio = std::log(md / (md - 1.0));
  for (std::int64_t k = 1; k <= m - 1; ++k) {
    log_ratio += std::log1p(-shift / (md + shift - static_cast<double>(k)));
    const auto i = static_cast<std::size_t>(k - 1);
    w.d_mk[i] = params.d_norm * std::exp(log_ratio);
    w.accept_prob[i] = std::min(1.0, std::exp(log_ratio));
  }
  return w;
}

std::int64_t coupling_threshold(std::int64_t m, const AlphaParams& params) {
  require_m(m, "coupling_threshold");
  for (std::int64_t k = 1; k <= m - 1; ++k) {
    if (log_weight_ratio(m, k, params) <= 0.0) return k;
  }
  return m;
}

bool dominance_check(std::int64_t m, const AlphaParams& params) {
  require_m(m, "dominance_check");
  const JumpLaw law(m, params);
  // Summation and Gamma rounding leave ~1e-15 slack at k = 1 where both sides are 1.
  constexpr double kRelTol = 1e-12;
  double tail_u = 0.0;
  for (std::int64_t k = m - 1; k >= 1; --k) {
    tail_u += law.pmf(k);
    if (tail_u > v_tail(k, params) * (1.0 + kRelTol)) return false;
  }
  return true;
}

double mismatch_probability(std::int64_t m, const AlphaParams& params) {
  require_m(m, "mismatch_probability");
  const double md = static_cast<double>(m);
  const double shift = params.alpha - 1.0;
  double log_ratio = std::log(md / (md - 1.0));
  double sum = 0.0;
  for (std::int64_t k = 1; k <= m - 1; ++k) {
    log_ratio += std::log1p(-shift / (md + shift - static_cast<double>(k)));
    if (log_ratio < 0.0) sum += v_pmf(k, params) * -std::expm1(log_ratio);
  }
  // P_{m,m-k} = 0 for k >= m.
  return sum + v_tail(m, params);
}

double residual_mass(std::int64_t m, const AlphaParams& params) {
  require_m(m, "residual_mass");
  double sum = 0.0;
  for (std::int64_t j = 1; j <= m - 1; ++j) {
    const double lr = log_weight_ratio(m, j, params);
    if (lr <= 0.0) break;
    sum += v_pmf(j, params) * std::expm1(lr);
  }
  return sum;
}

double mismatch_tail(std::int64_t m, std::int64_t k, const AlphaParams& params) {
  require_m(m, "mismatch_tail");
  if (k <= 1) return 1.0;
  const double total = mismatch_probability(m, params);
  double sum = v_tail(std::max(k, m), params);
  for (std::int64_t j = std::max<std::int64_t>(k, 1); j <= m - 1; ++j) {
    const double lr = log_weight_ratio(m, j, params);
    if (lr < 0.0) sum += v_pmf(j, params) * -std::expm1(lr);
  }
  return sum / total;
}

}  // namespace betacoal
