#include "betacoal/coalescent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace betacoal {

namespace {

void require_n(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("initial block count must be at least 1");
}

// Visits each step (state, holding time) of the chain; holding time first,
// then the jump, so every caller consumes the stream identically.
template <class Visitor>
void walk_chain(std::int64_t n, RandomStream& stream, const Model& model, Visitor&& visit) {
  std::int64_t m = n;
  while (m > 1) {
    const double holding = sample_exponential(total_rate(m, model.params()), stream);
    const std::int64_t next = m - sample_jump(m, stream, model);
    visit(m, holding, next);
    m = next;
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

bool IntegerPointProcess::contains(std::int64_t x) const {
  return std::binary_search(atoms.begin(), atoms.end(), x);
}

BlockCountingPath simulate_path(std::int64_t n, RandomStream& stream, const Model& model) {
  require_n(n);
  BlockCountingPath path;
  path.n = n;
  path.states.push_back(n);
  path.times.push_back(0.0);
  walk_chain(n, stream, model, [&path](std::int64_t, double holding, std::int64_t next) {
    path.states.push_back(next);
    path.times.push_back(path.times.back() + holding);
  });
  return path;
}

double tree_length(const BlockCountingPath& path) {
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < path.states.size(); ++i) {
    length += static_cast<double>(path.states[i]) * (path.times[i + 1] - path.times[i]);
  }
  return length;
}

LengthSample simulate_length(std::int64_t n, RandomStream& stream, const Model& model) {
  require_n(n);
  LengthSample sample;
  walk_chain(n, stream, model, [&sample](std::int64_t m, double holding, std::int64_t) {
    sample.length += static_cast<double>(m) * holding;
    ++sample.tau;
  });
  return sample;
}

double expected_tree_length(std::int64_t n, const AlphaParams& params) {
  require_n(n);
  std::vector<double> ell(static_cast<std::size_t>(n + 1), 0.0);
  for (std::int64_t m = 2; m <= n; ++m) {
    const auto pmf = JumpLaw(m, params).pmf_table();
    double value = static_cast<double>(m) / total_rate(m, params);
    for (std::int64_t k = 1; k <= m - 1; ++k) value += pmf[k - 1] * ell[m - k];
    ell[m] = value;
  }
  return ell[n];
}

std::int64_t segregating_sites(double length, double theta, RandomStream& stream) {
  if (!(theta > 0.0)) throw std::domain_error("segregating_sites: theta must be positive");
  if (!(length >= 0.0)) throw std::domain_error("segregating_sites: length must be nonnegative");
  return sample_poisson(theta * length, stream);
}

double watterson_theta(std::int64_t s_n, std::int64_t n, const AlphaParams& params) {
  if (n < 2) throw std::invalid_argument("watterson_theta: n must be at least 2");
  return static_cast<double>(s_n) /
         (params.c1 * std::pow(static_cast<double>(n), 2.0 - params.alpha));
}

IntegerPointProcess cpp_of_path(const BlockCountingPath& path) {
  IntegerPointProcess pp;
  pp.window_begin = 2;
  pp.window_end = path.n;
  if (path.states.size() > 1) {
    pp.atoms.assign(path.states.rbegin() + 1, path.states.rend());
  }
  return pp;
}

IntegerPointProcess cpp_infinity_window(std::int64_t a, std::int64_t b, std::int64_t start_n,
                                        RandomStream& stream, const Model& model) {
  if (a < 2 || b < a) throw std::invalid_argument("cpp_infinity_window: need 2 <= a <= b");
  if (start_n <= b) throw std::invalid_argument("cpp_infinity_window: start_n must exceed b");
  IntegerPointProcess pp;
  pp.window_begin = a;
  pp.window_end = b;
  std::int64_t m = start_n;
  while (m >= a) {
    if (m <= b) pp.atoms.push_back(m);
    m -= sample_jump(m, stream, model);
  }
  std::reverse(pp.atoms.begin(), pp.atoms.end());
  return pp;
}

std::int64_t first_state_at_or_below(std::int64_t b, std::int64_t start_n, RandomStream& stream,
                                     const Model& model) {
  if (b < 1 || start_n < 1) throw std::invalid_argument("first_state_at_or_below: bad bounds");
  std::int64_t m = start_n;
  while (m > b) m -= sample_jump(m, stream, model);
  return m;
}

double length_functional(const IntegerPointProcess& pp, RandomStream& stream, const Model& model) {
  double length = 0.0;
  for (auto it = pp.atoms.rbegin(); it != pp.atoms.rend(); ++it) {
    const std::int64_t x = *it;
    const double e = sample_exponential(1.0, stream);
    length += static_cast<double>(x) * e / total_rate(x, model.params());
  }
  return length;
}

void write_path_csv(std::ostream& out, const BlockCountingPath& path, std::uint64_t seed,
                    std::uint64_t stream_id, const AlphaParams& params) {
  out << "# seed=" << seed << " stream=" << stream_id << " alpha=" << format_double(params.alpha)
      << " n=" << path.n << '\n';
  for (std::size_t i = 0; i < path.states.size(); ++i) {
    out << i << ',' << path.states[i] << ',' << format_double(path.times[i]) << '\n';
  }
}

}  // namespace betacoal
