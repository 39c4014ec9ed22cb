#include "tqeval/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tqeval/intervals.hpp"
#include "tqeval/rng.hpp"
#include "tqeval/tdist.hpp"

namespace tqeval {

namespace {

// Fixed accumulation granularity: partial sums live per block and are
// reduced in block order, so the result does not depend on how blocks are
// distributed over workers.
constexpr std::int64_t kBlockSize = 8192;

// Reserved stream for scenario-level draws (the randomized fixed prior);
// trial streams are 0..trials-1 and cannot collide with it.
constexpr std::uint64_t kScenarioStream = ~static_cast<std::uint64_t>(0);

struct BlockTally {
  std::int64_t covered = 0;
  double halfwidth_sum = 0.0;
};

double critical_constant(const SimulationScenario& s) {
  const double alpha = 1.0 - s.confidence;
  switch (s.method) {
    case SimulationMethod::kArfNormal:
      return arf_k_normal(alpha);
    case SimulationMethod::kArfUnknownFormula:
      return arf_k_unknown(alpha);
    case SimulationMethod::kTInterval:
      return t_quantile(TCriticalQuery::confidence_level(
          DegreesOfFreedom(s.n_observations - 1), s.confidence));
  }
  throw std::logic_error("unreachable simulation method");
}

}  // namespace

std::string to_string(SimulationMethod m) {
  switch (m) {
    case SimulationMethod::kArfNormal: return "ARF_NORMAL";
    case SimulationMethod::kArfUnknownFormula: return "ARF_UNKNOWN_FORMULA";
    case SimulationMethod::kTInterval: return "T_INTERVAL";
  }
  throw std::logic_error("unreachable simulation method");
}

SimulationMethod simulation_method_from_string(const std::string& s) {
  if (s == "ARF_NORMAL" || s == "arf-normal") {
    return SimulationMethod::kArfNormal;
  }
  if (s == "ARF_UNKNOWN_FORMULA" || s == "arf-unknown") {
    return SimulationMethod::kArfUnknownFormula;
  }
  if (s == "T_INTERVAL" || s == "t") {
    return SimulationMethod::kTInterval;
  }
  throw std::domain_error("unknown simulation method: " + s);
}

std::string to_string(PriorMode m) {
  switch (m) {
    case PriorMode::kExactTrueMean: return "exact";
    case PriorMode::kFixedValue: return "fixed";
    case PriorMode::kBiased: return "biased";
    case PriorMode::kRandomizedFixed: return "randomized";
  }
  throw std::logic_error("unreachable prior mode");
}

PriorMode prior_mode_from_string(const std::string& s) {
  if (s == "exact") return PriorMode::kExactTrueMean;
  if (s == "fixed") return PriorMode::kFixedValue;
  if (s == "biased") return PriorMode::kBiased;
  if (s == "randomized") return PriorMode::kRandomizedFixed;
  throw std::domain_error("unknown prior mode: " + s);
}

void validate_scenario(const SimulationScenario& s) {
  if (!(s.true_stddev > 0.0)) {
    throw std::domain_error("scenario needs a positive true_stddev");
  }
  if (!(s.confidence > 0.0) || !(s.confidence < 1.0)) {
    throw std::domain_error("scenario confidence must lie in (0, 1)");
  }
  if (s.trials < 1) {
    throw std::domain_error("scenario needs at least one trial");
  }
  if (s.workers < 0) {
    throw std::domain_error("scenario worker count cannot be negative");
  }
  const bool is_arf = s.method != SimulationMethod::kTInterval;
  if (is_arf && s.n_observations != 1) {
    throw std::domain_error(
        "ARF methods are defined for exactly one observation per trial");
  }
  if (!is_arf && s.n_observations < 2) {
    throw std::domain_error("the t interval needs at least two observations");
  }
  // Rejects unattainable confidences early (e.g. a normal-row alpha that is
  // not tabulated).
  critical_constant(s);
}

double resolved_prior_mean(const SimulationScenario& s) {
  switch (s.prior_mode) {
    case PriorMode::kExactTrueMean:
      return s.true_mean;
    case PriorMode::kFixedValue:
      return s.prior_value;
    case PriorMode::kBiased:
      return s.true_mean + s.prior_bias;
    case PriorMode::kRandomizedFixed: {
      const double u = uniform_substream(s.seed, kScenarioStream, 0);
      return s.true_mean + (2.0 * u - 1.0) * s.prior_halfrange;
    }
  }
  throw std::logic_error("unreachable prior mode");
}

CoverageResult run_coverage(const SimulationScenario& scenario) {
  validate_scenario(scenario);

  const double constant = critical_constant(scenario);
  const bool is_arf = scenario.method != SimulationMethod::kTInterval;
  const double prior = is_arf ? resolved_prior_mean(scenario) : 0.0;
  const std::int64_t n = scenario.n_observations;
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  const std::int64_t block_count =
      (scenario.trials + kBlockSize - 1) / kBlockSize;
  std::vector<BlockTally> tallies(static_cast<std::size_t>(block_count));

  auto run_block = [&](std::int64_t block) {
    const std::int64_t begin = block * kBlockSize;
    const std::int64_t end = std::min(begin + kBlockSize, scenario.trials);
    BlockTally tally;
    for (std::int64_t trial = begin; trial < end; ++trial) {
      double center;
      double half_width;
      if (is_arf) {
        const double y = scenario.true_mean +
                         scenario.true_stddev *
                             normal_substream(scenario.seed, trial, 0);
        center = 0.5 * (y + prior);
        half_width = constant * std::fabs(y - prior);
      } else {
        // Streaming mean and spread keep the trial allocation-free.
        double mean = 0.0;
        double m2 = 0.0;
        for (std::int64_t j = 0; j < n; ++j) {
          const double x = scenario.true_mean +
                           scenario.true_stddev *
                               normal_substream(scenario.seed, trial,
                                                static_cast<std::uint64_t>(j));
          const double delta = x - mean;
          mean += delta / static_cast<double>(j + 1);
          m2 += delta * (x - mean);
        }
        const double stddev = std::sqrt(m2 / static_cast<double>(n - 1));
        center = mean;
        half_width = constant * stddev / sqrt_n;
      }
      // Coverage is judged on the pre-clamp interval; clamping is a
      // reporting concern, not part of the probabilistic claim.
      if (std::fabs(center - scenario.true_mean) <= half_width) {
        ++tally.covered;
      }
      tally.halfwidth_sum += half_width;
    }
    tallies[static_cast<std::size_t>(block)] = tally;
  };

  int workers = scenario.workers;
  if (workers == 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }
  workers = static_cast<int>(
      std::min<std::int64_t>(workers, block_count));

  if (workers <= 1) {
    for (std::int64_t block = 0; block < block_count; ++block) {
      run_block(block);
    }
  } else {
    std::atomic<std::int64_t> next_block{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::int64_t block = next_block.fetch_add(1);
          if (block >= block_count) return;
          run_block(block);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  CoverageResult result;
  result.scenario = scenario;
  result.trials = scenario.trials;
  double halfwidth_total = 0.0;
  for (const auto& tally : tallies) {
    result.covered += tally.covered;
    halfwidth_total += tally.halfwidth_sum;
  }
  result.empirical_coverage = static_cast<double>(result.covered) /
                              static_cast<double>(result.trials);
  result.mean_halfwidth = halfwidth_total / static_cast<double>(result.trials);
  return result;
}

std::vector<SweepRow> width_vs_n_sweep(const SimulationScenario& base,
                                       const std::vector<int>& n_values,
                                       bool include_single_observation_row) {
  if (n_values.empty()) {
    throw std::domain_error("sweep needs at least one sample size");
  }
  for (int n : n_values) {
    if (n < 2) {
      throw std::domain_error(
          "sweep sample sizes must be >= 2 (the n = 1 row is the optional "
          "single-observation row)");
    }
  }

  std::vector<SweepRow> rows;
  const double scale = std::fabs(base.true_mean);

  auto push_row = [&](const SimulationScenario& s) {
    const CoverageResult r = run_coverage(s);
    SweepRow row;
    row.n = s.n_observations;
    row.coverage = r.empirical_coverage;
    row.mean_halfwidth = r.mean_halfwidth;
    row.relative_margin = scale > 0.0
                              ? r.mean_halfwidth / scale
                              : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  };

  if (include_single_observation_row) {
    SimulationScenario arf = base;
    arf.n_observations = 1;
    const double alpha = 1.0 - base.confidence;
    arf.method = SimulationMethod::kArfUnknownFormula;
    try {
      arf_k_normal(alpha);
      arf.method = SimulationMethod::kArfNormal;
    } catch (const std::domain_error&) {
      // alpha not tabulated: keep the distribution-free formula row.
    }
    push_row(arf);
  }

  for (int n : n_values) {
    SimulationScenario s = base;
    s.method = SimulationMethod::kTInterval;
    s.n_observations = n;
    push_row(s);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "n,coverage,mean_halfwidth,relative_margin\n";
  char buf[160];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g\n", row.n,
                  row.coverage, row.mean_halfwidth, row.relative_margin);
    out << buf;
  }
  return out.str();
}

}  // namespace tqeval
