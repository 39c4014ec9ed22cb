#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tqeval {

enum class SimulationMethod { kArfNormal, kArfUnknownFormula, kTInterval };

std::string to_string(SimulationMethod m);
SimulationMethod simulation_method_from_string(const std::string& s);

// How the fixed ARF prior relates to the simulated truth. It must be set
// independently of the samples; all modes honor that by deriving it from
// the scenario alone.
enum class PriorMode {
  kExactTrueMean,   // prior = true_mean
  kFixedValue,      // prior = prior_value
  kBiased,          // prior = true_mean + prior_bias
  kRandomizedFixed  // prior = true_mean + U(-halfrange, +halfrange), one draw
};

std::string to_string(PriorMode m);
PriorMode prior_mode_from_string(const std::string& s);

struct SimulationScenario {
  double true_mean = 0.0;
  double true_stddev = 1.0;
  int n_observations = 1;
  double confidence = 0.80;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  SimulationMethod method = SimulationMethod::kTInterval;
  PriorMode prior_mode = PriorMode::kExactTrueMean;
  double prior_value = 0.0;
  double prior_bias = 0.0;
  double prior_halfrange = 0.0;
  int workers = 0;  // 0 = hardware concurrency
};

// Throws std::domain_error on an invalid scenario: ARF methods need
// n_observations = 1, the t interval needs n >= 2, trials must be positive,
// and the confidence must be attainable by the chosen method.
void validate_scenario(const SimulationScenario& s);

// The fixed prior the ARF interval will use, resolved from the scenario
// (including the one reserved random draw for the randomized mode).
double resolved_prior_mean(const SimulationScenario& s);

struct CoverageResult {
  double empirical_coverage = 0.0;  // covered / trials, exactly
  double mean_halfwidth = 0.0;
  std::int64_t trials = 0;
  std::int64_t covered = 0;
  SimulationScenario scenario;
};

// Draws `trials` samples of size n from Normal(true_mean, true_stddev),
// builds the interval per method, and counts the trials whose pre-clamp
// interval contains true_mean. Bit-identical for a given scenario across
// runs and worker counts: trials are keyed by (seed, trial index) and
// accumulated in fixed blocks.
CoverageResult run_coverage(const SimulationScenario& scenario);

struct SweepRow {
  int n = 0;
  double coverage = 0.0;
  double mean_halfwidth = 0.0;
  double relative_margin = 0.0;  // mean_halfwidth / |true_mean|

  bool operator==(const SweepRow&) const = default;
};

// t-interval coverage/width per sample size. Every n must be >= 2. With
// `include_single_observation_row`, a leading n = 1 row is computed from an
// ARF scenario over the same population (normal-row k when the base
// confidence is tabulated, the distribution-free formula otherwise).
std::vector<SweepRow> width_vs_n_sweep(
    const SimulationScenario& base, const std::vector<int>& n_values,
    bool include_single_observation_row = false);

// Plot-ready CSV: n,coverage,mean_halfwidth,relative_margin.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace tqeval
