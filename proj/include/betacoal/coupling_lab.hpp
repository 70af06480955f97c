#ifndef BETACOAL_COUPLING_LAB_HPP_
#define BETACOAL_COUPLING_LAB_HPP_

#include <cstdint>
#include <vector>

#include "betacoal/sampling.hpp"

namespace betacoal {

/// Points 2 <= R_1 < R_2 < ... <= window_end of the stationary renewal
/// process with V-distributed gaps.
struct RenewalProcess {
  std::vector<std::int64_t> points;
  std::int64_t window_end = 2;
};

/// R_1 has P(R_1 >= r) = (r-1) P(V >= r-1), later gaps are i.i.d. V.
RenewalProcess stationary_renewal(std::int64_t n, RandomStream& stream, const Model& model);

enum class CouplingMode { coupled, independent };

/// One dyadic block of the coupling between the chain X (started at M) and
/// the renewal walk Y (started at M'), run until both are at or below
/// 2^(r-1).
struct BlockCouplingResult {
  int r = 1;
  std::vector<std::int64_t> mu_atoms;  // X_0..X_{N-1}, increasing
  std::vector<std::int64_t> nu_atoms;  // Y_0..Y_{N'-1}, increasing
  std::int64_t end_x = 1;              // X_N
  std::int64_t end_y = 1;              // max(Y_{N'}, 1)
  std::int64_t d_r = 0;                // max_{i <= N ^ N'} |X_i - Y_i|
  std::int64_t steps_x = 0;            // N
  std::int64_t steps_y = 0;            // N'
};

BlockCouplingResult big_coupling_block(int r, std::int64_t m_start, std::int64_t m_prime_start,
                                       RandomStream& stream, const Model& model,
                                       CouplingMode mode = CouplingMode::coupled);

/// Sorted sample of an integer random variable, drawn from uniformly.
class EmpiricalLaw {
 public:
  EmpiricalLaw() = default;
  explicit EmpiricalLaw(std::vector<std::int64_t> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<std::int64_t>& values() const { return values_; }
  std::int64_t sample(RandomStream& stream) const;
  /// Fraction of the sample strictly above t.
  double survival(std::int64_t t) const;
  std::int64_t max() const { return values_.back(); }

 private:
  std::vector<std::int64_t> values_;
};

/// Empirical laws of the largest atom <= b of the coalescent point process
/// from infinity (windowed from start_n) and of the stationary renewal process.
struct WindowMaxLaws {
  std::int64_t b = 2;
  EmpiricalLaw cpp_max;
  EmpiricalLaw renewal_max;
};

WindowMaxLaws window_max_laws(std::int64_t b, std::int64_t trials, std::uint64_t seed,
                              const Model& model, unsigned threads = 1,
                              std::int64_t start_n = 0);

struct MismatchEstimate {
  double rate = 0.0;
  double ci_halfwidth = 0.0;  // three binomial standard errors
  std::int64_t mismatches = 0;
  std::int64_t trials = 0;
};

/// Empirical P(U != V) from sample_uv_pair at fixed m. trials >= 1000.
MismatchEstimate mismatch_rate(std::int64_t m, std::int64_t trials, std::uint64_t seed,
                               const Model& model, unsigned threads = 1);

struct MismatchTailCurve {
  std::vector<std::int64_t> k;
  std::vector<double> tail;  // empirical P(V >= k | U != V)
  std::int64_t mismatches = 0;
  bool insufficient_data = false;
  double fitted_exponent = 0.0;  // log-log slope over k in [4, 256]
  double fitted_constant = 0.0;  // max_k tail(k) k^(alpha-1)
};

MismatchTailCurve conditional_tail_given_mismatch(std::int64_t m, std::int64_t trials,
                                                  std::uint64_t seed, const Model& model,
                                                  unsigned threads = 1);

/// Least-squares slope of log(tail) against log(k) over points with
/// lo <= k <= hi and tail > 0.
double fit_log_log_slope(const std::vector<std::int64_t>& k, const std::vector<double>& tail,
                         std::int64_t lo, std::int64_t hi);

/// Mean over replicates of the fraction of j in [lo, hi] that are renewal points.
double renewal_occupancy(std::int64_t lo, std::int64_t hi, std::int64_t replicates,
                         std::uint64_t seed, const Model& model, unsigned threads = 1);

}  // namespace betacoal

#endif  // BETACOAL_COUPLING_LAB_HPP_
