#include "majsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "majsim/dynamics.hpp"
#include "majsim/errors.hpp"
#include "majsim/rng.hpp"

namespace majsim {

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials,
                               double z) {
  if (trials < 1) throw parameter_error("trials must be positive");
  if (successes < 0 || successes > trials) {
    throw parameter_error("successes out of range");
  }
  if (!(z > 0.0)) throw parameter_error("z must be positive");
  const double nd = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = (phat + z2 / (2.0 * nd)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd)) / denom;
  WilsonInterval w{std::max(0.0, center - half), std::min(1.0, center + half)};
  // At the degenerate frequencies the outer endpoint is exactly 0 or 1;
  // keep it that way instead of letting round-off pull it inward.
  if (successes == 0) w.low = 0.0;
  if (successes == trials) w.high = 1.0;
  return w;
}

GraphSpec GraphSpec::family(const std::string& name, int n, int extra_edges,
                            std::uint64_t seed) {
  GraphSpec spec;
  if (name == "complete") {
    spec.kind = Kind::complete;
  } else if (name == "cycle") {
    spec.kind = Kind::cycle;
  } else if (name == "path") {
    spec.kind = Kind::path;
  } else if (name == "star") {
    spec.kind = Kind::star;
  } else if (name == "random") {
    spec.kind = Kind::random;
  } else {
    throw parameter_error("unknown graph family: " + name);
  }
  spec.n = n;
  spec.extra_edges = extra_edges;
  spec.seed = seed;
  return spec;
}

Graph build_graph(const GraphSpec& spec) {
  switch (spec.kind) {
    case GraphSpec::Kind::complete:
      return make_complete(spec.n);
    case GraphSpec::Kind::cycle:
      return make_cycle(spec.n);
    case GraphSpec::Kind::path:
      return make_path(spec.n);
    case GraphSpec::Kind::star:
      return make_star(spec.n);
    case GraphSpec::Kind::random:
      return make_random_connected(spec.n, spec.extra_edges, spec.seed);
    case GraphSpec::Kind::file: {
      std::ifstream in(spec.source, std::ios::binary);
      if (!in) throw format_error("cannot open graph file: " + spec.source);
      std::ostringstream buf;
      buf << in.rdbuf();
      return from_edge_list(buf.str());
    }
    case GraphSpec::Kind::text:
      return from_edge_list(spec.source);
  }
  throw parameter_error("unknown graph kind");
}

std::string graph_id(const GraphSpec& spec) {
  switch (spec.kind) {
    case GraphSpec::Kind::complete:
      return "complete-" + std::to_string(spec.n);
    case GraphSpec::Kind::cycle:
      return "cycle-" + std::to_string(spec.n);
    case GraphSpec::Kind::path:
      return "path-" + std::to_string(spec.n);
    case GraphSpec::Kind::star:
      return "star-" + std::to_string(spec.n);
    case GraphSpec::Kind::random:
      return "random-" + std::to_string(spec.n) + "-x" +
             std::to_string(spec.extra_edges) + "-s" +
             std::to_string(spec.seed);
    case GraphSpec::Kind::file: {
      const auto slash = spec.source.find_last_of('/');
      const std::string base =
          slash == std::string::npos ? spec.source : spec.source.substr(slash + 1);
      return "file-" + base;
    }
    case GraphSpec::Kind::text: {
      std::istringstream in(spec.source);
      long long n = 0, m = 0;
      in >> n >> m;
      return "edges-" + std::to_string(n) + "-" + std::to_string(m);
    }
  }
  throw parameter_error("unknown graph kind");
}

int worker_count(std::int64_t trials) {
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (const char* env = std::getenv("MAJSIM_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1) {
      throw parameter_error("MAJSIM_THREADS must be a positive integer");
    }
    workers = std::min<long>(workers, parsed);
  }
  if (trials >= 1 && trials < workers) workers = static_cast<int>(trials);
  return workers;
}

namespace {

// Order-insensitive per-worker sums; merging is plain integer addition, so
// the aggregate cannot depend on the worker layout.
struct Partial {
  std::int64_t consensus = 0;
  std::int64_t absorbed = 0;
  std::int64_t timeouts = 0;
  std::int64_t steps = 0;
  std::int64_t flips = 0;
  std::string failure;
};

void run_block(const Graph& g, const ExperimentConfig& config,
               std::int64_t lo, std::int64_t hi, Partial& out) {
  RunOptions options;
  options.max_steps = config.max_steps;
  options.record_z_trace = false;
  const std::int64_t floor = consensus_floor(g);
  for (std::int64_t trial = lo; trial < hi; ++trial) {
    Rng rng(derive_stream(config.seed, static_cast<std::uint64_t>(trial)));
    OpinionState initial = init_opinions(g.vertex_count(), config.p, rng);
    try {
      const RunRecord rec = run_to_absorption(g, initial, rng, options);
      if (!validate_absorbed_state(g, rec.final_state)) {
        out.failure = "trial " + std::to_string(trial) +
                      " ended in a non-absorbed state";
        return;
      }
      if (rec.consensus != (rec.z_final == floor)) {
        out.failure = "trial " + std::to_string(trial) +
                      " consensus flag disagrees with the potential floor";
        return;
      }
      ++out.absorbed;
      out.steps += rec.steps_to_absorption;
      out.flips += rec.flips;
      if (rec.consensus) ++out.consensus;
    } catch (const timeout_error&) {
      ++out.timeouts;
    }
  }
}

}  // namespace

EstimateReport estimate(const ExperimentConfig& config) {
  if (config.trials < 1) throw parameter_error("trials must be positive");
  if (!(config.p >= 0.0 && config.p <= 1.0)) {
    throw parameter_error("probability must lie in [0,1]");
  }
  const Graph g = build_graph(config.graph);

  const int workers = worker_count(config.trials);
  std::vector<Partial> partials(workers);
  if (workers == 1) {
    run_block(g, config, 0, config.trials, partials[0]);
  } else {
    const std::int64_t block = (config.trials + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      const std::int64_t lo = w * block;
      const std::int64_t hi = std::min<std::int64_t>(lo + block, config.trials);
      pool.emplace_back(run_block, std::cref(g), std::cref(config), lo, hi,
                        std::ref(partials[w]));
    }
    for (auto& t : pool) t.join();
  }

  Partial total;
  for (const Partial& part : partials) {
    if (!part.failure.empty()) throw std::logic_error(part.failure);
    total.consensus += part.consensus;
    total.absorbed += part.absorbed;
    total.timeouts += part.timeouts;
    total.steps += part.steps;
    total.flips += part.flips;
  }

  EstimateReport report;
  report.trials = config.trials;
  report.consensus_count = total.consensus;
  report.consensus_frequency =
      static_cast<double>(total.consensus) / static_cast<double>(config.trials);
  const WilsonInterval wi =
      wilson_interval(total.consensus, config.trials, config.wilson_z);
  report.wilson_low = wi.low;
  report.wilson_high = wi.high;
  report.mean_absorption_steps =
      total.absorbed > 0 ? static_cast<double>(total.steps) /
                               static_cast<double>(total.absorbed)
                         : 0.0;
  report.mean_flips = total.absorbed > 0
                          ? static_cast<double>(total.flips) /
                                static_cast<double>(total.absorbed)
                          : 0.0;
  report.timeouts = total.timeouts;
  return report;
}

std::vector<SweepPoint> sweep(const GraphSpec& spec,
                              const std::vector<double>& p_grid,
                              std::int64_t trials, std::uint64_t seed) {
  const Graph g = build_graph(spec);
  const std::string id = graph_id(spec);
  std::vector<SweepPoint> out;
  out.reserve(p_grid.size());
  for (std::size_t k = 0; k < p_grid.size(); ++k) {
    ExperimentConfig config;
    config.graph = spec;
    config.p = p_grid[k];
    config.trials = trials;
    config.seed = derive_stream(seed, k);

    SweepPoint pt;
    pt.estimate = estimate(config);
    pt.report.graph_id = id;
    pt.report.n = g.vertex_count();
    pt.report.m = g.edge_count();
    pt.report.p = p_grid[k];
    pt.report.bound = consensus_bound(p_grid[k], g.edge_count());
    pt.report.vacuous = pt.report.bound <= 0.0;
    pt.report.exact_or_estimate = pt.estimate.consensus_frequency;
    pt.report.method = "mc";
    pt.report.satisfied = pt.report.bound <= pt.estimate.wilson_high + 1e-12;
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace majsim
