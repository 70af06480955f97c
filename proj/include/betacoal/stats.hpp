#ifndef BETACOAL_STATS_HPP_
#define BETACOAL_STATS_HPP_

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace betacoal {

/// sup |F_a - F_b| over the pooled sample; ties handled by advancing both
/// sides past equal values. Throws std::invalid_argument on an empty sample.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic two-sample KS critical value sqrt(-ln(sig/2)/2) sqrt((n+m)/(nm)).
double ks_critical_value(std::int64_t n, std::int64_t m, double significance);

enum class TailSide { left, right };

/// Hill estimate of the tail index from the k_order largest magnitudes of
/// the chosen tail (x for right, -x for left). Throws std::invalid_argument
/// unless 1 <= k_order and k_order + 1 positive magnitudes exist.
double hill_tail_index(std::span<const double> sample, std::int64_t k_order, TailSide side);

/// floor(n^0.6), at least 1.
std::int64_t hill_default_k(std::size_t n);

struct HillPoint {
  double exponent = 0.0;
  std::int64_t k_order = 0;
  double estimate = 0.0;
};

/// Hill estimates at k = n^e for e in {0.5, 0.6, 0.7}.
std::vector<HillPoint> hill_sensitivity(std::span<const double> sample, TailSide side);

double mean(std::span<const double> x);
double sample_variance(std::span<const double> x);
double median(std::span<const double> x);

/// Median of the means of `batches` consecutive equal-size batches.
double median_of_batch_means(std::span<const double> x, int batches = 10);

/// (1/n) sum exp(i u x_j).
std::complex<double> empirical_cf(std::span<const double> x, double u);

/// Fraction of the sample strictly below t.
double empirical_cdf_below(std::span<const double> x, double t);

}  // namespace betacoal

#endif  // BETACOAL_STATS_HPP_
