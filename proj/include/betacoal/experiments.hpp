#ifndef BETACOAL_EXPERIMENTS_HPP_
#define BETACOAL_EXPERIMENTS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "betacoal/numerics.hpp"
#include "betacoal/report.hpp"

namespace betacoal {

inline constexpr std::uint64_t kDefaultSeed = 0xC0A1E5CE;

/*
 * Parameters of one registered experiment. Unset fields take the
 * experiment's defaults. Setting alpha on a grid experiment replaces the
 * grid by that single value; n and replicates keep the meaning documented
 * in the registry.
 */
struct ExperimentSpec {
  std::string id;
  std::optional<AlphaParams> alpha;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> replicates;
  std::optional<double> theta;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::map<std::string, double> thresholds;
  bool keep_raw = false;
};

struct ExperimentInfo {
  std::string id;
  std::string summary;
};

/// Registered experiments in suite order.
const std::vector<ExperimentInfo>& experiment_registry();

bool is_registered_experiment(const std::string& id);

/// Runs one experiment. Throws std::invalid_argument on an unknown id or
/// invalid parameters.
ExperimentReport run_experiment(const ExperimentSpec& spec);

}  // namespace betacoal

#endif  // BETACOAL_EXPERIMENTS_HPP_
