#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "majsim/dynamics.hpp"
#include "majsim/errors.hpp"
#include "majsim/exact.hpp"
#include "majsim/graph.hpp"
#include "majsim/montecarlo.hpp"
#include "majsim/report_io.hpp"
#include "majsim/rng.hpp"
#include "majsim/theory.hpp"
#include "majsim/version.hpp"

#include "cli_common.hpp"
#include "verify_suites.hpp"

namespace {

using namespace majsim;
using cli::meta_line;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kTimeout = 3;

// stdout unless --out names a file.
struct Sink {
  std::ofstream file;
  std::ostream* out = &std::cout;
  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw parameter_error("cannot open output file: " + path);
    out = &file;
  }
  std::ostream& stream() { return *out; }
};

struct GraphArgs {
  std::string graph_path;
  std::string family;
  int n = 0;
  int extra = 0;
};

void add_graph_options(CLI::App* cmd, GraphArgs& ga) {
  auto* path = cmd->add_option("--graph", ga.graph_path, "edge-list file");
  auto* fam = cmd->add_option("--family", ga.family,
                              "complete|cycle|path|star|random");
  auto* n = cmd->add_option("--n", ga.n, "vertex count for --family");
  cmd->add_option("--extra", ga.extra,
                  "extra edges beyond the spanning tree (random family)");
  path->excludes(fam);
  fam->needs(n);
}

// The random family draws its generator stream off the run seed on a
// reserved index, away from the per-trial indices 0,1,2,...
GraphSpec resolve_spec(const GraphArgs& ga, std::uint64_t run_seed) {
  if (!ga.graph_path.empty()) {
    GraphSpec spec;
    spec.kind = GraphSpec::Kind::file;
    spec.source = ga.graph_path;
    return spec;
  }
  if (ga.family.empty()) {
    throw parameter_error("provide --graph PATH or --family NAME --n INT");
  }
  return GraphSpec::family(ga.family, ga.n, ga.extra,
                           derive_stream(run_seed, ~std::uint64_t{0}));
}

std::string family_name(GraphSpec::Kind kind) {
  switch (kind) {
    case GraphSpec::Kind::complete: return "complete";
    case GraphSpec::Kind::cycle: return "cycle";
    case GraphSpec::Kind::path: return "path";
    case GraphSpec::Kind::star: return "star";
    case GraphSpec::Kind::random: return "random";
    case GraphSpec::Kind::file: return "file";
    case GraphSpec::Kind::text: return "text";
  }
  return "unknown";
}

std::string spec_config(const GraphSpec& spec) {
  if (spec.kind == GraphSpec::Kind::file) return "graph=" + spec.source;
  std::string out = "family=" + family_name(spec.kind) +
                    " n=" + std::to_string(spec.n);
  if (spec.kind == GraphSpec::Kind::random) {
    out += " extra=" + std::to_string(spec.extra_edges) +
           " gseed=" + std::to_string(spec.seed);
  }
  return out;
}

int cmd_gen(const std::string& family, int n, int extra, std::uint64_t seed,
            const std::string& out_path) {
  const GraphSpec spec = GraphSpec::family(family, n, extra, seed);
  const Graph g = build_graph(spec);
  const std::string config = spec_config(spec) + " seed=" +
                             std::to_string(seed);
  // stdout carries the raw edge-list bytes; the header goes to stderr so
  // the output stays machine-consumable as-is.
  std::cerr << meta_line("gen", seed, config) << "\n";
  Sink sink;
  sink.open(out_path);
  sink.stream() << to_edge_list(g);
  return kOk;
}

int cmd_simulate(const GraphArgs& ga, double p, const std::string& init,
                 std::uint64_t seed, std::int64_t max_steps, bool trace,
                 const std::string& out_path) {
  const GraphSpec spec = resolve_spec(ga, seed);
  const Graph g = build_graph(spec);
  Rng rng(derive_stream(seed, 0));
  OpinionState initial =
      init.empty() ? init_opinions(g.vertex_count(), p, rng)
                   : OpinionState::parse(init);
  if (initial.size() != g.vertex_count()) {
    throw parameter_error("--init length " + std::to_string(initial.size()) +
                          " does not match n=" +
                          std::to_string(g.vertex_count()));
  }
  RunOptions options;
  options.max_steps = max_steps;
  options.record_z_trace = trace;

  const std::string config =
      spec_config(spec) + " p=" + format_double(p) + " init=" + init +
      " seed=" + std::to_string(seed) +
      " max_steps=" + std::to_string(max_steps) +
      " trace=" + (trace ? "1" : "0");
  Sink sink;
  sink.open(out_path);
  sink.stream() << meta_line("simulate", seed, config) << "\n";
  try {
    const RunRecord rec = run_to_absorption(g, initial, rng, options);
    for (std::size_t i = 1; i < rec.z_trace.size(); ++i) {
      if (rec.z_trace[i] > rec.z_trace[i - 1]) {
        std::cerr << "potential increased at trace index " << i << ": "
                  << rec.z_trace[i - 1] << " -> " << rec.z_trace[i] << "\n";
        return kError;
      }
    }
    sink.stream() << run_record_json(rec) << "\n";
    return kOk;
  } catch (const timeout_error& e) {
    sink.stream() << run_record_json(e.partial(), /*timed_out=*/true) << "\n";
    std::cerr << "timeout: " << e.what() << "\n";
    return kTimeout;
  }
}

int cmd_exact(const GraphArgs& ga, double p, std::uint64_t seed,
              const std::string& out_path) {
  const GraphSpec spec = resolve_spec(ga, seed);
  const Graph g = build_graph(spec);
  const ExactAnalysis a = exact_consensus_probability(g, p);
  const std::string config = spec_config(spec) + " p=" + format_double(p) +
                             " seed=" + std::to_string(seed);
  Sink sink;
  sink.open(out_path);
  sink.stream() << meta_line("exact", seed, config) << "\n";
  sink.stream() << exact_analysis_json(a) << "\n";
  return kOk;
}

SweepPoint make_point(const GraphSpec& spec, const Graph& g, double p,
                      const EstimateReport& rep) {
  SweepPoint pt;
  pt.estimate = rep;
  pt.report.graph_id = graph_id(spec);
  pt.report.n = g.vertex_count();
  pt.report.m = g.edge_count();
  pt.report.p = p;
  pt.report.bound = consensus_bound(p, g.edge_count());
  pt.report.vacuous = pt.report.bound <= 0.0;
  pt.report.exact_or_estimate = rep.consensus_frequency;
  pt.report.method = "mc";
  pt.report.satisfied = pt.report.bound <= rep.wilson_high + 1e-12;
  return pt;
}

int cmd_mc(const GraphArgs& ga, double p, std::int64_t trials,
           std::uint64_t seed, std::int64_t max_steps,
           const std::string& format, const std::string& out_path) {
  ExperimentConfig config;
  config.graph = resolve_spec(ga, seed);
  config.p = p;
  config.trials = trials;
  config.seed = seed;
  config.max_steps = max_steps;
  const EstimateReport rep = estimate(config);

  const std::string cfg = spec_config(config.graph) + " p=" +
                          format_double(p) + " trials=" +
                          std::to_string(trials) + " seed=" +
                          std::to_string(seed) + " max_steps=" +
                          std::to_string(max_steps) + " format=" + format;
  Sink sink;
  sink.open(out_path);
  if (format == "csv") {
    const Graph g = build_graph(config.graph);
    sink.stream() << "# " << meta_line("mc", seed, cfg) << "\n";
    sink.stream() << bound_table_csv_header() << "\n";
    sink.stream() << sweep_point_csv_row(make_point(config.graph, g, p, rep))
                  << "\n";
  } else {
    sink.stream() << meta_line("mc", seed, cfg) << "\n";
    sink.stream() << estimate_report_json(rep) << "\n";
  }
  if (rep.timeouts > 0) {
    std::cerr << rep.timeouts << " trial(s) hit the step budget\n";
    return kTimeout;
  }
  return kOk;
}

int cmd_sweep(const GraphArgs& ga, const std::string& grid_text,
              std::int64_t trials, std::uint64_t seed,
              const std::string& format, const std::string& out_path) {
  const GraphSpec spec = resolve_spec(ga, seed);
  const std::vector<double> grid = cli::parse_p_grid(grid_text);
  const std::vector<SweepPoint> points = sweep(spec, grid, trials, seed);

  const std::string cfg = spec_config(spec) + " p_grid=" + grid_text +
                          " trials=" + std::to_string(trials) +
                          " seed=" + std::to_string(seed) +
                          " format=" + format;
  Sink sink;
  sink.open(out_path);
  std::int64_t timeouts = 0;
  if (format == "json") {
    sink.stream() << meta_line("sweep", seed, cfg) << "\n";
    for (const SweepPoint& pt : points) {
      sink.stream() << sweep_point_json(pt) << "\n";
      timeouts += pt.estimate.timeouts;
    }
  } else {
    sink.stream() << "# " << meta_line("sweep", seed, cfg) << "\n";
    sink.stream() << bound_table_csv_header() << "\n";
    for (const SweepPoint& pt : points) {
      sink.stream() << sweep_point_csv_row(pt) << "\n";
      timeouts += pt.estimate.timeouts;
    }
  }
  if (timeouts > 0) {
    std::cerr << timeouts << " trial(s) hit the step budget\n";
    return kTimeout;
  }
  return kOk;
}

int cmd_verify(const std::string& suite, const std::string& family,
               const std::string& n_range, int max_n,
               const std::string& grid_text, std::int64_t trials,
               std::int64_t steps, std::uint64_t seed,
               const std::string& out_path) {
  cli::VerifyOptions opt;
  opt.family = family;
  if (!n_range.empty()) {
    const auto [lo, hi] = cli::parse_n_range(n_range);
    opt.n_lo = lo;
    opt.n_hi = hi;
  }
  opt.max_n = max_n;
  if (!grid_text.empty()) opt.p_grid = cli::parse_p_grid(grid_text);
  opt.trials = trials;
  opt.steps = steps;
  opt.seed = seed;

  const std::string cfg = "suite=" + suite + " family=" + family +
                          " n=" + n_range + " max_n=" + std::to_string(max_n) +
                          " p_grid=" + grid_text +
                          " trials=" + std::to_string(trials) +
                          " steps=" + std::to_string(steps) +
                          " seed=" + std::to_string(seed);
  Sink sink;
  sink.open(out_path);
  sink.stream() << meta_line("verify", seed, cfg) << "\n";
  return cli::run_verify_suite(suite, opt, sink.stream());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"majority-imitation opinion dynamics toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "write a graph as an edge list");
  std::string gen_family;
  int gen_n = 0, gen_extra = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--family,family", gen_family,
                  "complete|cycle|path|star|random")
      ->required();
  gen->add_option("--n,n", gen_n, "vertex count")->required();
  gen->add_option("--extra", gen_extra, "extra edges (random family)");
  gen->add_option("--seed", gen_seed, "generator seed (random family)");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run one trajectory to absorption");
  GraphArgs sim_graph;
  double sim_p = 0.5;
  std::string sim_init, sim_out;
  std::uint64_t sim_seed = 0;
  std::int64_t sim_max_steps = 0;
  bool sim_trace = false;
  add_graph_options(sim, sim_graph);
  sim->add_option("--p", sim_p, "P(opinion +1) per vertex (default 0.5)");
  sim->add_option("--init", sim_init, "explicit initial state, e.g. \"++--\"");
  sim->add_option("--seed", sim_seed, "run seed");
  sim->add_option("--max-steps", sim_max_steps,
                  "step budget (0 = 10^6 per vertex)");
  sim->add_flag("--trace", sim_trace, "record the potential after every step");
  sim->add_option("--out", sim_out, "output file (default stdout)");

  // exact
  auto* exa = app.add_subcommand("exact",
                                 "exact consensus probability by enumeration");
  GraphArgs exa_graph;
  double exa_p = 0.5;
  std::uint64_t exa_seed = 0;
  std::string exa_out;
  add_graph_options(exa, exa_graph);
  exa->add_option("--p", exa_p, "P(opinion +1) per vertex");
  exa->add_option("--seed", exa_seed, "seed (random family only)");
  exa->add_option("--out", exa_out, "output file (default stdout)");

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo consensus estimate");
  GraphArgs mc_graph;
  double mc_p = 0.5;
  std::int64_t mc_trials = 1000, mc_max_steps = 0;
  std::uint64_t mc_seed = 0;
  std::string mc_format = "json", mc_out;
  add_graph_options(mc, mc_graph);
  mc->add_option("--p", mc_p, "P(opinion +1) per vertex");
  mc->add_option("--trials", mc_trials, "number of independent trials");
  mc->add_option("--seed", mc_seed, "run seed");
  mc->add_option("--max-steps", mc_max_steps,
                 "per-trial step budget (0 = 10^6 per vertex)");
  mc->add_option("--format", mc_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  mc->add_option("--out", mc_out, "output file (default stdout)");

  // sweep
  auto* swp = app.add_subcommand("sweep",
                                 "bound-vs-estimate table over a p grid");
  GraphArgs swp_graph;
  std::string swp_grid;
  std::int64_t swp_trials = 1000;
  std::uint64_t swp_seed = 0;
  std::string swp_format = "csv", swp_out;
  add_graph_options(swp, swp_graph);
  swp->add_option("--p-grid", swp_grid, "START:STOP:STEP, inclusive")
      ->required();
  swp->add_option("--trials", swp_trials, "trials per grid point");
  swp->add_option("--seed", swp_seed, "run seed");
  swp->add_option("--format", swp_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  swp->add_option("--out", swp_out, "output file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "run an invariant battery");
  std::string ver_suite, ver_family, ver_n, ver_grid, ver_out;
  int ver_max_n = 8;
  std::int64_t ver_trials = 100, ver_steps = 100000;
  std::uint64_t ver_seed = 0;
  ver->add_option("suite", ver_suite,
                  "potential|absorption|blocked|bound|reachability")
      ->required()
      ->check(CLI::IsMember(
          {"potential", "absorption", "blocked", "bound", "reachability"}));
  ver->add_option("--family", ver_family, "restrict to one graph family");
  ver->add_option("--n", ver_n, "vertex count or range LO..HI");
  ver->add_option("--max-n", ver_max_n, "largest n in the bound battery");
  ver->add_option("--p-grid", ver_grid, "START:STOP:STEP for the bound suite");
  ver->add_option("--trials", ver_trials, "trials per instance");
  ver->add_option("--steps", ver_steps, "freeze-watch steps per instance");
  ver->add_option("--seed", ver_seed, "battery seed");
  ver->add_option("--out", ver_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_family, gen_n, gen_extra, gen_seed, gen_out);
    }
    if (sim->parsed()) {
      return cmd_simulate(sim_graph, sim_p, sim_init, sim_seed, sim_max_steps,
                          sim_trace, sim_out);
    }
    if (exa->parsed()) {
      return cmd_exact(exa_graph, exa_p, exa_seed, exa_out);
    }
    if (mc->parsed()) {
      return cmd_mc(mc_graph, mc_p, mc_trials, mc_seed, mc_max_steps,
                    mc_format, mc_out);
    }
    if (swp->parsed()) {
      return cmd_sweep(swp_graph, swp_grid, swp_trials, swp_seed, swp_format,
                       swp_out);
    }
    if (ver->parsed()) {
      return cmd_verify(ver_suite, ver_family, ver_n, ver_max_n, ver_grid,
                        ver_trials, ver_steps, ver_seed, ver_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
