#ifndef BETACOAL_COALESCENT_HPP_
#define BETACOAL_COALESCENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "betacoal/sampling.hpp"

namespace betacoal {

/// One run of the block-counting chain: states n = X_0 > ... > X_tau = 1 and
/// merge times 0 = T_0 < ... < T_tau.
struct BlockCountingPath {
  std::int64_t n = 1;
  std::vector<std::int64_t> states;
  std::vector<double> times;

  std::int64_t tau() const { return static_cast<std::int64_t>(states.size()) - 1; }
};

/// 0/1-multiplicity atoms on the integer window [window_begin, window_end],
/// kept in increasing order.
struct IntegerPointProcess {
  std::vector<std::int64_t> atoms;
  std::int64_t window_begin = 2;
  std::int64_t window_end = 1;

  std::size_t size() const { return atoms.size(); }
  bool contains(std::int64_t x) const;
};

struct LengthSample {
  double length = 0.0;
  std::int64_t tau = 0;
};

BlockCountingPath simulate_path(std::int64_t n, RandomStream& stream, const Model& model);

/// L_n = sum_i X_i (T_{i+1} - T_i).
double tree_length(const BlockCountingPath& path);

/// Draws the same chain as simulate_path (same stream consumption) without
/// storing it.
LengthSample simulate_length(std::int64_t n, RandomStream& stream, const Model& model);

/// Exact E L_n by the first-step recursion
/// l(m) = m / rho_m + sum_k P_{m,m-k} l(m-k). O(n^2).
double expected_tree_length(std::int64_t n, const AlphaParams& params);

/// Poisson(theta * length).
std::int64_t segregating_sites(double length, double theta, RandomStream& stream);

/// s_n / (c1 n^(2-alpha)).
double watterson_theta(std::int64_t s_n, std::int64_t n, const AlphaParams& params);

/// Atoms {X_0, ..., X_{tau-1}} on [2, n].
IntegerPointProcess cpp_of_path(const BlockCountingPath& path);

/// Windowed approximation of the point process coming down from infinity:
/// run the jump chain from start_n until it drops below a and keep the
/// visited states inside [a, b]. Requires 2 <= a <= b < start_n.
IntegerPointProcess cpp_infinity_window(std::int64_t a, std::int64_t b, std::int64_t start_n,
                                        RandomStream& stream, const Model& model);

inline std::int64_t default_start_n(std::int64_t b) { return 100 * b; }

/// Jump chain from start_n down to the first state <= b; returns that state
/// (1 when the chain jumps past 2). This is the largest atom at or below b.
std::int64_t first_state_at_or_below(std::int64_t b, std::int64_t start_n, RandomStream& stream,
                                     const Model& model);

/// sum over atoms x of x E_x / rho_x with fresh unit exponentials E_x, drawn
/// per atom from the largest atom down.
double length_functional(const IntegerPointProcess& pp, RandomStream& stream, const Model& model);

/// Path dump: "# seed=<u64> stream=<u64> alpha=<dec> n=<int>" then "i,X_i,T_i".
void write_path_csv(std::ostream& out, const BlockCountingPath& path, std::uint64_t seed,
                    std::uint64_t stream_id, const AlphaParams& params);

}  // namespace betacoal

#endif  // BETACOAL_COALESCENT_HPP_
