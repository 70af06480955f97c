#ifndef BETACOAL_LIMITS_HPP_
#define BETACOAL_LIMITS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "betacoal/sampling.hpp"

namespace betacoal {

enum class Regime { I = 1, II = 2, III = 3 };

/*
 * Regime of the tree length (threshold: the golden ratio) and of the number
 * of segregating sites (threshold: sqrt 2). The boundary cases are reachable
 * only through the symbolic tags.
 *
 *   length_scale_exponent  1/alpha + 1 - alpha in case I, else 0
 *   length_log_power       1/alpha in case II, else 0
 *   sites_scale_exponent   1/alpha + 1 - alpha in case I, else 1 - alpha/2
 */
struct RegimeClassification {
  Regime theorem1_case = Regime::I;
  Regime corollary_case = Regime::I;
  double centering_exponent = 0.0;
  double length_scale_exponent = 0.0;
  double length_log_power = 0.0;
  double sites_scale_exponent = 0.0;
};

RegimeClassification classify_regime(const AlphaParams& params);

/// Centering c1 n^(2-alpha) of L_n.
double length_centering(std::int64_t n, const AlphaParams& params);

double normalize_length(double l_n, std::int64_t n, const AlphaParams& params);
double normalize_sites(std::int64_t s_n, std::int64_t n, double theta, const AlphaParams& params);

enum class LimitQuantity { length, sites };

/// m i.i.d. draws of the limit law of the normalized statistic. Throws
/// std::invalid_argument for the length in case III, which has no closed form.
std::vector<double> reference_sample(const RegimeClassification& regime, LimitQuantity which,
                                     double theta, std::int64_t m, RandomStream& stream,
                                     const AlphaParams& params);

/// n^(alpha-1-1/alpha) sum_{k<=n} k^(1-alpha) (V_k - gamma); (log n)^(-1/alpha)
/// in place of the power at the golden tag. Throws std::invalid_argument
/// above the golden ratio.
double lemma52_statistic(std::int64_t n, RandomStream& stream, const Model& model);

/// Same statistic on supplied values V_1..V_n.
double lemma52_statistic_from(std::span<const double> v, const AlphaParams& params);

/// Trajectory of sum_{k<=j} k^(-beta) (V_k - gamma), j = 1..n.
std::vector<double> lemma51_partial_sums(double beta, std::int64_t n, RandomStream& stream,
                                         const Model& model);

std::vector<double> lemma51_partial_sums_from(double beta, std::span<const double> v,
                                              const AlphaParams& params);

/// max - min of the trajectory over j in [n/2, n].
double tail_oscillation(std::span<const double> trajectory);

}  // namespace betacoal

#endif  // BETACOAL_LIMITS_HPP_
