#ifndef SIRW_EXPERIMENTS_HPP
#define SIRW_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sirw/rng.hpp"

namespace sirw {

struct ExperimentConfig {
  std::string id;
  std::uint64_t seed = 1;
  std::int64_t reps = 0;   // 0: experiment default
  std::int64_t steps = 0;  // 0: experiment default
  int parallel = 1;
  std::string format = "json";  // json | csv | both
  std::map<std::string, double> params;
};

struct CheckResult {
  std::string name;
  bool pass;
  double value;
  std::string threshold;  // the criterion the value is judged against
};

struct Report {
  std::string experiment_id;
  std::uint64_t seed;
  std::int64_t reps = 0;
  std::int64_t steps = 0;
  bool pass = false;
  std::vector<CheckResult> checks;
  std::map<std::string, double> metrics;
  // (file name, CSV body) pairs for the run's exported series. Reports hold
  // no wall-clock data: every byte is a function of (config, seed).
  std::vector<std::pair<std::string, std::string>> series;

  std::string to_json() const;
};

struct ExperimentInfo {
  std::string id;
  std::string description;
  std::int64_t default_reps;
  std::int64_t default_steps;
};

const std::vector<ExperimentInfo>& experiment_catalog();

// Runs one catalog experiment. Throws std::invalid_argument for unknown ids
// or malformed configs; TieAbortError propagates from the simulations.
Report run_experiment(const ExperimentConfig& cfg);

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

// Stream key for (seed, experiment, replication, role); replications see the
// same streams whatever the scheduling order.
inline std::uint64_t substream(std::uint64_t seed, const std::string& id,
                               std::int64_t rep, const std::string& role) {
  return derive_key(seed, {hash_string(id.c_str()),
                           static_cast<std::uint64_t>(rep),
                           hash_string(role.c_str())});
}

// Runs body(0..n-1), split over `threads` workers. Bodies must only write
// rep-indexed slots; aggregation stays with the caller.
void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& body);

}  // namespace sirw

#endif  // SIRW_EXPERIMENTS_HPP
