#include "betacoal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace betacoal {

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_critical_value(std::int64_t n, std::int64_t m, double significance) {
  if (n < 1 || m < 1) throw std::invalid_argument("ks_critical_value: sizes must be positive");
  if (!(significance > 0.0 && significance < 1.0)) {
    throw std::invalid_argument("ks_critical_value: significance must lie in (0, 1)");
  }
  const double c = std::sqrt(-0.5 * std::log(significance / 2.0));
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

double hill_tail_index(std::span<const double> sample, std::int64_t k_order, TailSide side) {
  if (k_order < 1) throw std::invalid_argument("hill_tail_index: k_order must be positive");
  std::vector<double> mags;
  mags.reserve(sample.size());
  for (const double v : sample) {
    const double m = side == TailSide::right ? v : -v;
    if (m > 0.0) mags.push_back(m);
  }
  const auto k = static_cast<std::size_t>(k_order);
  if (mags.size() < k + 1) throw std::invalid_argument("hill_tail_index: insufficient sample");
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(k), mags.end(),
                   std::greater<>());
  const double threshold = mags[k];
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += std::log(mags[i] / threshold);
  return static_cast<double>(k) / sum;
}

std::int64_t hill_default_k(std::size_t n) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::pow(static_cast<double>(n), 0.6)));
}

std::vector<HillPoint> hill_sensitivity(std::span<const double> sample, TailSide side) {
  std::vector<HillPoint> out;
  for (const double e : {0.5, 0.6, 0.7}) {
    HillPoint p;
    p.exponent = e;
    p.k_order = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::pow(static_cast<double>(sample.size()), e)));
    p.estimate = hill_tail_index(sample, p.k_order, side);
    out.push_back(p);
  }
  return out;
}

double mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (const double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("sample_variance: need two points");
  const double m = mean(x);
  double s = 0.0;
  for (const double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

double median(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("median: empty sample");
  std::vector<double> y(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const std::size_t n = y.size();
  return n % 2 == 1 ? y[n / 2] : 0.5 * (y[n / 2 - 1] + y[n / 2]);
}

double median_of_batch_means(std::span<const double> x, int batches) {
  if (batches < 1) throw std::invalid_argument("median_of_batch_means: batches must be positive");
  const std::size_t size = x.size() / static_cast<std::size_t>(batches);
  if (size == 0) throw std::invalid_argument("median_of_batch_means: too few points");
  std::vector<double> means;
  for (int b = 0; b < batches; ++b) means.push_back(mean(x.subspan(b * size, size)));
  return median(means);
}

std::complex<double> empirical_cf(std::span<const double> x, double u) {
  if (x.empty()) throw std::invalid_argument("empirical_cf: empty sample");
  double re = 0.0, im = 0.0;
  for (const double v : x) {
    re += std::cos(u * v);
    im += std::sin(u * v);
  }
  const double n = static_cast<double>(x.size());
  return {re / n, im / n};
}

double empirical_cdf_below(std::span<const double> x, double t) {
  if (x.empty()) throw std::invalid_argument("empirical_cdf_below: empty sample");
  const auto count = std::count_if(x.begin(), x.end(), [t](double v) { return v < t; });
  return static_cast<double>(count) / static_cast<double>(x.size());
}

}  // namespace betacoal
