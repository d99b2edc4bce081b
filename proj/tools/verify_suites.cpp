#include "verify_suites.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "majsim/dynamics.hpp"
#include "majsim/exact.hpp"
#include "majsim/graph.hpp"
#include "majsim/montecarlo.hpp"
#include "majsim/rng.hpp"
#include "majsim/theory.hpp"

namespace majsim::cli {

namespace {

constexpr int kViolation = 2;

void dump_violation(std::ostream& out, const std::string& suite,
                    const Graph& g, const OpinionState& x,
                    const std::string& detail) {
  out << "VIOLATION suite=" << suite << " " << detail << "\n";
  out << "state=" << x.to_string() << "\n";
  out << "graph edge list:\n" << to_edge_list(g);
}

Graph family_graph(const std::string& family, int n, std::uint64_t seed) {
  return build_graph(GraphSpec::family(family, n, /*extra_edges=*/n / 3, seed));
}

// Named small graphs plus a few random ones; the standing battery for the
// bound and absorption suites.
std::vector<GraphSpec> battery(int max_n, std::uint64_t seed) {
  std::vector<GraphSpec> specs;
  for (int n : {4, 6}) specs.push_back(GraphSpec::family("path", n));
  for (int n : {4, 5, 6}) specs.push_back(GraphSpec::family("cycle", n));
  specs.push_back(GraphSpec::family("star", 6));
  std::erase_if(specs, [&](const GraphSpec& s) { return s.n > max_n; });
  for (int i = 0; i < 3; ++i) {
    const int n = std::min(max_n, 6 + i);
    specs.push_back(GraphSpec::family("random", n, 1 + i / 2,
                                      derive_stream(seed, 500 + i)));
  }
  return specs;
}

int suite_potential(const VerifyOptions& opt, std::ostream& out) {
  const std::string family = opt.family.empty() ? "random" : opt.family;
  const int lo = opt.n_lo > 0 ? opt.n_lo : 5;
  const int hi = opt.n_hi > 0 ? opt.n_hi : 10;
  std::int64_t total_steps = 0, total_flips = 0;
  for (std::int64_t t = 0; t < opt.trials; ++t) {
    const int n = lo + static_cast<int>(t % (hi - lo + 1));
    const Graph g = family_graph(family, n, derive_stream(opt.seed, 900000 + t));
    Rng rng(derive_stream(opt.seed, t));
    OpinionState x = init_opinions(n, 0.5, rng);
    std::int64_t z = potential_z(g, x);
    const std::int64_t budget = default_max_steps(g);
    std::int64_t steps = 0, flips = 0;
    while (!is_absorbing(g, x)) {
      if (steps >= budget) {
        dump_violation(out, "potential", g, x,
                       "trial=" + std::to_string(t) + " budget exhausted");
        return kViolation;
      }
      const StepOutcome o = step(g, x, rng);
      ++steps;
      if (!o.flipped) {
        if (o.z_decrement != 0) {
          dump_violation(out, "potential", g, x,
                         "null event reported a decrement");
          return kViolation;
        }
        continue;
      }
      ++flips;
      // Post-flip, the agent's agree/disagree are the pre-flip pair swapped,
      // so the decrement must equal 2*(agree - disagree) as seen now.
      const OpinionCounts c = opinion_counts(g, x, o.agent);
      const std::int64_t z_next = potential_z(g, x);
      const std::string at = "trial=" + std::to_string(t) +
                             " step=" + std::to_string(steps) +
                             " agent=" + std::to_string(o.agent);
      if (o.z_decrement != 2 * (c.agree - c.disagree)) {
        dump_violation(out, "potential", g, x, at + " decrement identity broken");
        return kViolation;
      }
      if (z_next > z) {
        dump_violation(out, "potential", g, x, at + " Z increased");
        return kViolation;
      }
      if (z_next != z - o.z_decrement) {
        dump_violation(out, "potential", g, x,
                       at + " Z change disagrees with reported decrement");
        return kViolation;
      }
      z = z_next;
    }
    if (!validate_absorbed_state(g, x)) {
      dump_violation(out, "potential", g, x,
                     "trial=" + std::to_string(t) + " stopped while unstable");
      return kViolation;
    }
    total_steps += steps;
    total_flips += flips;
    out << "potential trial=" << t << " n=" << n << " steps=" << steps
        << " flips=" << flips << " z_final=" << z << " ok\n";
  }
  out << "potential suite: " << opt.trials << " trials, " << total_steps
      << " steps, " << total_flips << " flips, zero Z increases\n";
  return 0;
}

int suite_absorption(const VerifyOptions& opt, std::ostream& out) {
  std::vector<GraphSpec> specs;
  if (opt.family.empty()) {
    specs = battery(/*max_n=*/8, opt.seed);
  } else {
    const int lo = opt.n_lo > 0 ? opt.n_lo : 4;
    const int hi = opt.n_hi > 0 ? opt.n_hi : 8;
    for (int n = lo; n <= hi; ++n) {
      specs.push_back(GraphSpec::family(opt.family, n, n / 3,
                                        derive_stream(opt.seed, 600 + n)));
    }
  }
  for (std::size_t idx = 0; idx < specs.size(); ++idx) {
    const Graph g = build_graph(specs[idx]);
    const std::string id = graph_id(specs[idx]);
    const std::int64_t floor = consensus_floor(g);
    const std::uint64_t graph_seed = derive_stream(opt.seed, idx);
    for (std::int64_t t = 0; t < opt.trials; ++t) {
      Rng rng(derive_stream(graph_seed, t));
      OpinionState initial = init_opinions(g.vertex_count(), 0.5, rng);
      const RunRecord rec = run_to_absorption(g, initial, rng);
      const std::string at =
          "graph=" + id + " trial=" + std::to_string(t);
      if (!validate_absorbed_state(g, rec.final_state)) {
        dump_violation(out, "absorption", g, rec.final_state,
                       at + " terminal state is unstable");
        return kViolation;
      }
      if (rec.consensus != (rec.z_final == floor)) {
        dump_violation(out, "absorption", g, rec.final_state,
                       at + " consensus flag vs potential floor mismatch");
        return kViolation;
      }
    }
    std::size_t absorbing_count = 0;
    if (g.vertex_count() <= kDenseVertexCap) {
      // Exhaustive cross-check of the absorbing set against a direct scan.
      const auto absorbing = enumerate_absorbing(g);
      absorbing_count = absorbing.size();
      const std::size_t states = std::size_t{1} << g.vertex_count();
      for (StateIndex code = 0; code < states; ++code) {
        const OpinionState x = decode_state(code, g.vertex_count());
        const bool listed =
            std::binary_search(absorbing.begin(), absorbing.end(), code);
        if (listed != is_absorbing(g, x)) {
          dump_violation(out, "absorption", g, x,
                         "graph=" + id + " absorbing-set scan mismatch");
          return kViolation;
        }
        if (listed && (is_consensus(x) != (potential_z(g, x) == floor))) {
          dump_violation(out, "absorption", g, x,
                         "graph=" + id + " consensus <=> Z-floor broken");
          return kViolation;
        }
      }
    }
    out << "absorption graph=" << id << " trials=" << opt.trials
        << " absorbing_states=" << absorbing_count << " ok\n";
  }
  return 0;
}

int suite_blocked(const VerifyOptions& opt, std::ostream& out) {
  std::vector<std::string> families;
  if (opt.family.empty()) {
    families = {"cycle", "path"};
  } else {
    families = {opt.family};
  }
  const int lo = opt.n_lo > 0 ? opt.n_lo : 4;
  const int hi = opt.n_hi > 0 ? opt.n_hi : 8;
  std::uint64_t instance = 0;
  for (const std::string& family : families) {
    for (int n = std::max(lo, 4); n <= hi; ++n) {
      for (int s : {1, -1}) {
        ++instance;
        const Graph g = build_graph(GraphSpec::family(family, n));
        std::vector<std::int8_t> v(static_cast<std::size_t>(n));
        v[0] = v[1] = static_cast<std::int8_t>(s);
        v[2] = v[3] = static_cast<std::int8_t>(-s);
        Rng fill(derive_stream(opt.seed, 3000 + instance));
        for (int i = 4; i < n; ++i) {
          v[i] = fill.bernoulli(0.5) ? std::int8_t{1} : std::int8_t{-1};
        }
        const OpinionState x{std::move(v)};
        const std::string at = "family=" + family + " n=" + std::to_string(n) +
                               " polarity=" + (s > 0 ? "+" : "-");
        const auto bp = find_blocked_path(g, x);
        if (!bp || bp->vertices != std::array<int, 4>{0, 1, 2, 3} ||
            bp->polarity != s) {
          dump_violation(out, "blocked", g, x,
                         at + " planted quadruple not detected");
          return kViolation;
        }
        Rng rng(derive_stream(opt.seed, 4000 + instance));
        if (!verify_frozen(g, x, *bp, rng, opt.steps)) {
          dump_violation(out, "blocked", g, x, at + " quadruple moved");
          return kViolation;
        }
        if (can_reach_consensus(g, encode_state(x))) {
          dump_violation(out, "blocked", g, x,
                         at + " consensus reachable despite the block");
          return kViolation;
        }
        out << "blocked " << at << " steps=" << opt.steps
            << " frozen=(0,1,2,3) consensus_reachable=false ok\n";
      }
    }
  }
  return 0;
}

int suite_bound(const VerifyOptions& opt, std::ostream& out) {
  std::vector<double> grid = opt.p_grid;
  if (grid.empty()) {
    for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
  }
  for (const GraphSpec& spec : battery(opt.max_n, opt.seed)) {
    const Graph g = build_graph(spec);
    const std::string id = graph_id(spec);
    for (double p : grid) {
      const ExactAnalysis a = exact_consensus_probability(g, p);
      const double bound = consensus_bound(p, g.edge_count());
      if (a.p_consensus < bound - 1e-9) {
        OpinionState empty = OpinionState::filled(g.vertex_count(), 1);
        dump_violation(out, "bound", g, empty,
                       "graph=" + id + " p=" + std::to_string(p) +
                           " exact=" + std::to_string(a.p_consensus) +
                           " below bound=" + std::to_string(bound));
        return kViolation;
      }
      out << "bound graph=" << id << " p=" << p << " bound=" << bound
          << " exact=" << a.p_consensus << " ok\n";
    }
  }
  return 0;
}

// Blocked quadruple at time 0 => consensus unreachable: checked as a hard
// invariant. The converse (no initial block => reachable) is false — it
// first fails on the 8-cycle, e.g. +-++-+--, where every
// movable vertex is a singleton run whose flip welds two length->=2 runs
// into a frozen boundary. Such states are counterexamples to the converse
// and are reported, not treated as solver bugs. Every one is re-verified by
// an exhaustive forward search before being reported.
bool consensus_reachable_by_search(const Graph& g, StateIndex start) {
  const int n = g.vertex_count();
  const StateIndex full = static_cast<StateIndex>((1u << n) - 1);
  std::vector<char> seen(std::size_t{1} << n, 0);
  std::vector<StateIndex> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const StateIndex code = stack.back();
    stack.pop_back();
    if (code == 0 || code == full) return true;
    const OpinionState x = decode_state(code, n);
    for (int v = 0; v < n; ++v) {
      const OpinionCounts c = opinion_counts(g, x, v);
      const StateIndex next = code ^ (1u << v);
      if (c.disagree > c.agree && !seen[next]) {
        seen[next] = 1;
        stack.push_back(next);
      }
    }
  }
  return false;
}

int suite_reachability(const VerifyOptions& opt, std::ostream& out) {
  std::vector<std::string> families;
  if (opt.family.empty()) {
    families = {"cycle", "path"};
  } else if (opt.family == "cycle" || opt.family == "path") {
    families = {opt.family};
  } else {
    throw parameter_error(
        "the blocked-quadruple reachability claim is only about cycle and "
        "path families");
  }
  const int lo = opt.n_lo > 0 ? std::max(opt.n_lo, 4) : 4;
  const int hi = opt.n_hi > 0 ? opt.n_hi : 10;
  constexpr int kMaxDumpedStates = 5;
  for (const std::string& family : families) {
    for (int n = lo; n <= hi; ++n) {
      const Graph g = build_graph(GraphSpec::family(family, n));
      const auto reachable = consensus_reachable_states(g);
      const std::size_t states = std::size_t{1} << n;
      std::int64_t counterexamples = 0;
      for (StateIndex code = 0; code < states; ++code) {
        const OpinionState x = decode_state(code, n);
        const bool blocked = find_blocked_path(g, x).has_value();
        if (blocked && reachable[code]) {
          dump_violation(out, "reachability", g, x,
                         "family=" + family + " n=" + std::to_string(n) +
                             " code=" + std::to_string(code) +
                             " blocked yet consensus-reachable");
          return kViolation;
        }
        if (!blocked && !reachable[code]) {
          if (consensus_reachable_by_search(g, code)) {
            dump_violation(out, "reachability", g, x,
                           "family=" + family + " n=" + std::to_string(n) +
                               " code=" + std::to_string(code) +
                               " solver and forward search disagree");
            return kViolation;
          }
          ++counterexamples;
          if (counterexamples <= kMaxDumpedStates) {
            out << "converse counterexample family=" << family << " n=" << n
                << " state=" << x.to_string()
                << " (no initial block, consensus unreachable)\n";
          }
        }
      }
      out << "reachability family=" << family << " n=" << n
          << " states=" << states << " blocked=>unreachable ok"
          << " converse_counterexamples=" << counterexamples << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_verify_suite(const std::string& suite, const VerifyOptions& opt,
                     std::ostream& out) {
  if (suite == "potential") return suite_potential(opt, out);
  if (suite == "absorption") return suite_absorption(opt, out);
  if (suite == "blocked") return suite_blocked(opt, out);
  if (suite == "bound") return suite_bound(opt, out);
  if (suite == "reachability") return suite_reachability(opt, out);
  throw parameter_error("unknown verify suite: " + suite);
}

}  // namespace majsim::cli
