#include "betacoal/coupling_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "betacoal/coalescent.hpp"
#include "betacoal/parallel.hpp"

namespace betacoal {

namespace {

constexpr std::int64_t kTrialsPerChunk = 10000;

std::vector<std::int64_t> mismatch_grid() {
  std::vector<std::int64_t> grid;
  for (std::int64_t k = 1; k <= 1024; k *= 2) grid.push_back(k);
  return grid;
}

}  // namespace

RenewalProcess stationary_renewal(std::int64_t n, RandomStream& stream, const Model& model) {
  if (n < 2) throw std::invalid_argument("stationary_renewal: n must be at least 2");
  RenewalProcess process;
  process.window_end = n;
  std::int64_t point = 1 + model.v().invert_delay_tail(stream.uniform());
  while (point <= n) {
    process.points.push_back(point);
    point += sample_v(stream, model);
  }
  return process;
}

BlockCouplingResult big_coupling_block(int r, std::int64_t m_start, std::int64_t m_prime_start,
                                       RandomStream& stream, const Model& model,
                                       CouplingMode mode) {
  if (r < 1 || r > 62) throw std::invalid_argument("big_coupling_block: r out of range");
  const std::int64_t top = std::int64_t{1} << r;
  const std::int64_t half = top / 2;
  if (m_start < 1 || m_prime_start < 1 || m_start > top || m_prime_start > top) {
    throw std::invalid_argument("big_coupling_block: starts must lie in [1, 2^r]");
  }

  BlockCouplingResult result;
  result.r = r;
  std::int64_t x = m_start;
  std::int64_t y = m_prime_start;
  bool x_running = x > half;
  bool y_running = y > half;
  result.end_x = x;
  result.end_y = std::max<std::int64_t>(y, 1);
  result.d_r = std::abs(x - y);

  std::int64_t step = 0;
  while (x_running || y_running) {
    std::int64_t u = 0;
    std::int64_t v = 0;
    if (mode == CouplingMode::coupled) {
      if (x >= 2) {
        const UVPair pair = sample_uv_pair(x, stream, model);
        u = pair.u;
        v = pair.v;
      } else {
        v = sample_v(stream, model);
      }
    } else {
      u = x >= 2 ? sample_jump(x, stream, model) : 0;
      v = sample_v(stream, model);
    }
    if (x_running) result.mu_atoms.push_back(x);
    if (y_running) result.nu_atoms.push_back(y);
    const bool both_running = x_running && y_running;
    x -= u;
    y -= v;
    ++step;
    if (both_running) result.d_r = std::max(result.d_r, std::abs(x - y));
    if (x_running && x <= half) {
      x_running = false;
      result.steps_x = step;
      result.end_x = x;
    }
    if (y_running && y <= half) {
      y_running = false;
      result.steps_y = step;
      result.end_y = std::max<std::int64_t>(y, 1);
    }
  }
  std::reverse(result.mu_atoms.begin(), result.mu_atoms.end());
  std::reverse(result.nu_atoms.begin(), result.nu_atoms.end());
  return result;
}

EmpiricalLaw::EmpiricalLaw(std::vector<std::int64_t> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("EmpiricalLaw: empty sample");
  std::sort(values_.begin(), values_.end());
}

std::int64_t EmpiricalLaw::sample(RandomStream& stream) const {
  const auto n = values_.size();
  auto index = static_cast<std::size_t>(stream.uniform() * static_cast<double>(n));
  return values_[std::min(index, n - 1)];
}

double EmpiricalLaw::survival(std::int64_t t) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), t);
  return static_cast<double>(values_.end() - it) / static_cast<double>(values_.size());
}

WindowMaxLaws window_max_laws(std::int64_t b, std::int64_t trials, std::uint64_t seed,
                              const Model& model, unsigned threads, std::int64_t start_n) {
  if (b < 2) throw std::invalid_argument("window_max_laws: b must be at least 2");
  if (trials < 1) throw std::invalid_argument("window_max_laws: trials must be positive");
  if (start_n <= 0) start_n = default_start_n(b);
  if (start_n <= b) throw std::invalid_argument("window_max_laws: start_n must exceed b");

  const std::uint64_t cpp_seed = derive_seed(seed, "window-max/cpp");
  const std::uint64_t renewal_seed = derive_seed(seed, "window-max/renewal");
  const auto count = static_cast<std::size_t>(trials);
  auto cpp = map_replicates(count, threads, [&](std::size_t i) {
    RandomStream stream(cpp_seed, i);
    return first_state_at_or_below(b, start_n, stream, model);
  });
  auto renewal = map_replicates(count, threads, [&](std::size_t i) {
    RandomStream stream(renewal_seed, i);
    const RenewalProcess process = stationary_renewal(b, stream, model);
    return process.points.empty() ? std::int64_t{1} : process.points.back();
  });

  WindowMaxLaws laws;
  laws.b = b;
  laws.cpp_max = EmpiricalLaw(std::move(cpp));
  laws.renewal_max = EmpiricalLaw(std::move(renewal));
  return laws;
}

MismatchEstimate mismatch_rate(std::int64_t m, std::int64_t trials, std::uint64_t seed,
                               const Model& model, unsigned threads) {
  if (m < 2) throw std::invalid_argument("mismatch_rate: m must be at least 2");
  if (trials < 1000) throw std::invalid_argument("mismatch_rate: need at least 1000 trials");
  const std::int64_t chunks = (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  const auto counts = map_replicates(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    RandomStream stream(seed, c);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kTrialsPerChunk;
    const std::int64_t end = std::min(trials, begin + kTrialsPerChunk);
    std::int64_t hits = 0;
    for (std::int64_t t = begin; t < end; ++t) {
      const UVPair pair = sample_uv_pair(m, stream, model);
      if (pair.u != pair.v) ++hits;
    }
    return hits;
  });
  MismatchEstimate estimate;
  estimate.trials = trials;
  for (const auto c : counts) estimate.mismatches += c;
  const double n = static_cast<double>(trials);
  estimate.rate = static_cast<double>(estimate.mismatches) / n;
  estimate.ci_halfwidth = 3.0 * std::sqrt(estimate.rate * (1.0 - estimate.rate) / n);
  return estimate;
}

double fit_log_log_slope(const std::vector<std::int64_t>& k, const std::vector<double>& tail,
                         std::int64_t lo, std::int64_t hi) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < lo || k[i] > hi || !(tail[i] > 0.0)) continue;
    const double x = std::log(static_cast<double>(k[i]));
    const double y = std::log(tail[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::nan("");
  const double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

MismatchTailCurve conditional_tail_given_mismatch(std::int64_t m, std::int64_t trials,
                                                  std::uint64_t seed, const Model& model,
                                                  unsigned threads) {
  if (m < 2) throw std::invalid_argument("conditional_tail_given_mismatch: m must be >= 2");
  const std::int64_t chunks = (trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  const auto per_chunk =
      map_replicates(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
        RandomStream stream(seed, c);
        const std::int64_t begin = static_cast<std::int64_t>(c) * kTrialsPerChunk;
        const std::int64_t end = std::min(trials, begin + kTrialsPerChunk);
        std::vector<std::int64_t> v_on_mismatch;
        for (std::int64_t t = begin; t < end; ++t) {
          const UVPair pair = sample_uv_pair(m, stream, model);
          if (pair.u != pair.v) v_on_mismatch.push_back(pair.v);
        }
        return v_on_mismatch;
      });
  std::vector<std::int64_t> values;
  for (const auto& chunk : per_chunk) values.insert(values.end(), chunk.begin(), chunk.end());
  std::sort(values.begin(), values.end());

  MismatchTailCurve curve;
  curve.k = mismatch_grid();
  curve.mismatches = static_cast<std::int64_t>(values.size());
  curve.insufficient_data = curve.mismatches < 100;
  if (values.empty()) {
    curve.tail.assign(curve.k.size(), 0.0);
    curve.fitted_exponent = std::nan("");
    return curve;
  }
  const double total = static_cast<double>(values.size());
  const double alpha = model.params().alpha;
  for (const auto k : curve.k) {
    const auto it = std::lower_bound(values.begin(), values.end(), k);
    const double tail = static_cast<double>(values.end() - it) / total;
    curve.tail.push_back(tail);
    curve.fitted_constant =
        std::max(curve.fitted_constant, tail * std::pow(static_cast<double>(k), alpha - 1.0));
  }
  curve.fitted_exponent = fit_log_log_slope(curve.k, curve.tail, 4, 256);
  return curve;
}

double renewal_occupancy(std::int64_t lo, std::int64_t hi, std::int64_t replicates,
                         std::uint64_t seed, const Model& model, unsigned threads) {
  if (lo < 2 || hi < lo) throw std::invalid_argument("renewal_occupancy: need 2 <= lo <= hi");
  const auto fractions =
      map_replicates(static_cast<std::size_t>(replicates), threads, [&](std::size_t i) {
        RandomStream stream(seed, i);
        const RenewalProcess process = stationary_renewal(hi, stream, model);
        const auto first = std::lower_bound(process.points.begin(), process.points.end(), lo);
        return static_cast<double>(process.points.end() - first) /
               static_cast<double>(hi - lo + 1);
      });
  double sum = 0.0;
  for (const double f : fractions) sum += f;
  return sum / static_cast<double>(fractions.size());
}

}  // namespace betacoal
