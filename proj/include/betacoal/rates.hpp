#ifndef BETACOAL_RATES_HPP_
#define BETACOAL_RATES_HPP_

#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "betacoal/numerics.hpp"

namespace betacoal {

/// An integer-valued law exposing pointwise pmf and survival P(X >= k).
template <class L>
concept DiscreteLaw = requires(const L& law, std::int64_t k) {
  { law.support_start() } -> std::convertible_to<std::int64_t>;
  { law.pmf(k) } -> std::convertible_to<double>;
  { law.tail(k) } -> std::convertible_to<double>;
  { law.mean() } -> std::convertible_to<double>;
};

/// Rate at which k of m blocks merge into one, i.e. the rate of the jump
/// m -> m - k + 1:  C(m,k) B(k-alpha, m-k+alpha) / (Gamma(2-alpha) Gamma(alpha)).
double merge_rate(std::int64_t m, std::int64_t k, const AlphaParams& params);

/// Total jump rate out of m blocks, closed form
/// Gamma(m+alpha-1) / (alpha Gamma(alpha) Gamma(m-1)).
double total_rate(std::int64_t m, const AlphaParams& params);

/// Same quantity as the explicit sum of merge_rate over k = 2..m. O(m).
double total_rate_by_summation(std::int64_t m, const AlphaParams& params);

/// Law of the downward jump U = X_0 - X_1 given X_0 = m, support 1..m-1.
/// pmf is evaluated on demand; nothing of size m is stored.
class JumpLaw {
 public:
  JumpLaw(std::int64_t m, const AlphaParams& params);

  std::int64_t m() const { return m_; }
  std::int64_t support_start() const { return 1; }
  std::int64_t support_end() const { return m_ - 1; }

  double pmf(std::int64_t k) const;
  /// P(U >= k). Sums the pmf over [k, m-1].
  double tail(std::int64_t k) const;
  double mean() const;

  /// Materialized pmf, entry i holds P(U = i + 1).
  std::vector<double> pmf_table() const;

 private:
  std::int64_t m_;
  AlphaParams params_;
  double log_total_;
};

JumpLaw jump_law(std::int64_t m, const AlphaParams& params);

/// P(V = k) = d Gamma(k+1-alpha) / Gamma(k+2), k >= 1.
double v_pmf(std::int64_t k, const AlphaParams& params);
/// P(V >= k) = Gamma(k+1-alpha) / (Gamma(2-alpha) Gamma(k+1)).
double v_tail(std::int64_t k, const AlphaParams& params);

/*
 * The heavy-tailed jump law V. Holds a survival table for the first
 * kTableSize values so that inversion sampling is a table search in the bulk
 * and a bisection on the closed-form tail beyond it.
 */
class VLaw {
 public:
  static constexpr std::int64_t kTableSize = 1 << 15;

  explicit VLaw(const AlphaParams& params);

  const AlphaParams& params() const { return params_; }
  std::int64_t support_start() const { return 1; }
  double pmf(std::int64_t k) const;
  double tail(std::int64_t k) const;
  double mean() const { return params_.gamma_const; }

  /// The k with tail(k) > u >= tail(k+1), for u in (0, 1).
  std::int64_t invert_tail(double u) const;

  /// The j >= 1 with P(J >= j) > u >= P(J >= j+1) where P(J >= j) = j tail(j).
  /// J + 1 is the first point of the stationary renewal process.
  std::int64_t invert_delay_tail(double u) const;

 private:
  AlphaParams params_;
  std::vector<double> tail_;        // tail_[k] = P(V >= k), tail_[0] unused
  std::vector<double> delay_tail_;  // delay_tail_[k] = k P(V >= k)
};

VLaw v_law(const AlphaParams& params);

/// log(P_{m,m-k} / P(V = k)) = log(d_mk / d) for 1 <= k <= m-1, by the
/// telescoping product for small k and Gamma ratios beyond.
double log_weight_ratio(std::int64_t m, std::int64_t k, const AlphaParams& params);

struct CouplingWeights {
  std::int64_t m = 0;
  std::vector<double> d_mk;         // index k-1, k = 1..m-1
  double d_m = 0.0;
  std::vector<double> accept_prob;  // min(1, d_mk / d), index k-1
};

CouplingWeights coupling_weights(std::int64_t m, const AlphaParams& params);

/// k_m = min{k >= 1 : P_{m,m-k} <= P(V = k)}; never exceeds m.
std::int64_t coupling_threshold(std::int64_t m, const AlphaParams& params);

/// Exact check of P(U >= k | X_0 = m) <= P(V >= k) for every k in [1, m-1].
bool dominance_check(std::int64_t m, const AlphaParams& params);

/// Exact P(U != V) = sum_k (P(V = k) - P_{m,m-k})^+ under the coupling.
double mismatch_probability(std::int64_t m, const AlphaParams& params);

/// Same mass computed from the other side: sum_{j < k_m} (P_{m,m-j} - P(V=j)).
double residual_mass(std::int64_t m, const AlphaParams& params);

/// Exact P(V >= k | U != V).
double mismatch_tail(std::int64_t m, std::int64_t k, const AlphaParams& params);

}  // namespace betacoal

#endif  // BETACOAL_RATES_HPP_
