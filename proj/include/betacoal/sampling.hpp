#ifndef BETACOAL_SAMPLING_HPP_
#define BETACOAL_SAMPLING_HPP_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "betacoal/numerics.hpp"
#include "betacoal/rates.hpp"

namespace betacoal {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Sub-seed for a named phase of an experiment: mix64(seed ^ fnv1a(label)).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

/*
 * Seeded generator owned by one replicate. The engine is mt19937_64 seeded
 * with mix64(mix64(seed) ^ mix64(stream_id + 0x9E3779B97F4A7C15)); every
 * conversion to floating point is done here, so draws are identical on
 * every platform.
 */
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Parameters plus the precomputed V table; immutable and shareable.
class Model {
 public:
  explicit Model(const AlphaParams& params) : params_(params), v_(params) {}

  const AlphaParams& params() const { return params_; }
  const VLaw& v() const { return v_; }

 private:
  AlphaParams params_;
  VLaw v_;
};

/// Counters for the coupled jump sampler.
struct JumpDiagnostics {
  std::int64_t calls = 0;
  std::int64_t rejections = 0;
  std::int64_t residual_builds = 0;
  std::int64_t fallbacks = 0;
};

struct UVPair {
  std::int64_t u = 0;
  std::int64_t v = 0;
};

std::int64_t sample_v(RandomStream& stream, const Model& model);

/// Joint draw of (U, V): V from the V law, U from the jump law at m, U <= V,
/// P(U = k | V = k) = min(1, P_{m,m-k} / P(V = k)). On rejection U follows the
/// residual law proportional to (P_{m,m-j} - P(V = j))^+ on j < k_m.
UVPair sample_uv_pair(std::int64_t m, RandomStream& stream, const Model& model,
                      JumpDiagnostics* diag = nullptr);

/// Exact draw from jump_law(m) through the coupling; O(1) expected cost.
std::int64_t sample_jump(std::int64_t m, RandomStream& stream, const Model& model,
                         JumpDiagnostics* diag = nullptr);

/// Reference sampler: inversion on the fully materialized jump-law CDF.
class JumpInversionSampler {
 public:
  JumpInversionSampler(std::int64_t m, const AlphaParams& params);
  std::int64_t operator()(RandomStream& stream) const;

 private:
  std::vector<double> cdf_;
};

double sample_exponential(double rate, RandomStream& stream);
double sample_normal(RandomStream& stream);
/// Inversion below mean 30, Hormann's PTRS transformed rejection above.
std::int64_t sample_poisson(double mean, RandomStream& stream);
/// Chambers-Mallows-Stuck draw of the normalized maximally skewed stable law.
double sample_stable(RandomStream& stream, const AlphaParams& params);

}  // namespace betacoal

#endif  // BETACOAL_SAMPLING_HPP_
