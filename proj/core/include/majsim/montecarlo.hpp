#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "majsim/graph.hpp"
#include "majsim/theory.hpp"

namespace majsim {

inline constexpr double kWilsonZ95 = 1.959963984540054;
inline constexpr double kWilsonZ99 = 2.5758293035489004;

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for a binomial proportion. Behaves sensibly at
/// frequencies 0 and 1, which is the regime consensus estimates live in.
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials,
                               double z);

/// Recipe for a graph: a generator family with parameters, or an edge-list
/// source. Kept as data so configs hash and replay deterministically.
struct GraphSpec {
  enum class Kind { complete, cycle, path, star, random, file, text };
  Kind kind = Kind::complete;
  int n = 0;
  int extra_edges = 0;          // random family only
  std::uint64_t seed = 0;       // random family only
  std::string source;           // path for file, raw text for text

  static GraphSpec family(const std::string& name, int n, int extra_edges = 0,
                          std::uint64_t seed = 0);
};

Graph build_graph(const GraphSpec& spec);

/// Short stable identifier used in report rows, e.g. "cycle-4".
std::string graph_id(const GraphSpec& spec);

struct ExperimentConfig {
  GraphSpec graph;
  double p = 0.5;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  std::int64_t max_steps = 0;  // 0 = default budget
  bool record_z_trace = false;
  double wilson_z = kWilsonZ95;
};

struct EstimateReport {
  std::int64_t trials = 0;
  std::int64_t consensus_count = 0;
  double consensus_frequency = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 1.0;
  double mean_absorption_steps = 0.0;
  double mean_flips = 0.0;
  std::int64_t timeouts = 0;
};

/// Runs config.trials independent trajectories, each on the stream derived
/// from (seed, trial_index), and aggregates order-insensitive counts. The
/// result is bit-identical for identical configs regardless of how many
/// workers execute the trials. Every completed trial is validated against
/// the absorbed-state and potential-floor invariants before aggregation.
EstimateReport estimate(const ExperimentConfig& config);

struct SweepPoint {
  BoundReport report;
  EstimateReport estimate;
};

/// One estimate per grid point, each paired with the closed-form bound.
/// A point is satisfied when the bound lies at or below the upper end of
/// the Wilson interval, i.e. the estimate cannot refute it.
std::vector<SweepPoint> sweep(const GraphSpec& spec,
                              const std::vector<double>& p_grid,
                              std::int64_t trials, std::uint64_t seed);

/// Worker count for parallel trials: MAJSIM_THREADS when set, otherwise
/// hardware concurrency, never more than the trial count.
int worker_count(std::int64_t trials);

}  // namespace majsim
