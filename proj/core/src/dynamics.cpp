#include "majsim/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace majsim {

namespace {

void check_state(const Graph& g, const OpinionState& x) {
  if (x.size() != g.vertex_count()) {
    throw parameter_error("opinion state has " + std::to_string(x.size()) +
                          " entries for a graph on " +
                          std::to_string(g.vertex_count()) + " vertices");
  }
}

void check_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) {
    throw parameter_error("vertex " + std::to_string(v) + " out of range");
  }
}

}  // namespace

OpinionState::OpinionState(std::vector<std::int8_t> values)
    : values_(std::move(values)) {
  for (std::int8_t v : values_) {
    if (v != 1 && v != -1) {
      throw parameter_error("opinion entries must be +1 or -1, got " +
                            std::to_string(static_cast<int>(v)));
    }
  }
}

OpinionState OpinionState::filled(int n, int value) {
  if (n < 0) throw parameter_error("negative state size");
  if (value != 1 && value != -1) {
    throw parameter_error("opinion value must be +1 or -1");
  }
  OpinionState s;
  s.values_.assign(static_cast<std::size_t>(n),
                   static_cast<std::int8_t>(value));
  return s;
}

OpinionState OpinionState::parse(std::string_view text) {
  OpinionState s;
  s.values_.reserve(text.size());
  for (char c : text) {
    if (c == '+') {
      s.values_.push_back(1);
    } else if (c == '-') {
      s.values_.push_back(-1);
    } else {
      throw format_error(std::string("opinion strings use '+' and '-', got '") +
                         c + "'");
    }
  }
  return s;
}

std::string OpinionState::to_string() const {
  std::string out;
  out.reserve(values_.size());
  for (std::int8_t v : values_) out.push_back(v > 0 ? '+' : '-');
  return out;
}

OpinionState init_opinions(int n, double p, Rng& rng) {
  if (n < 0) throw parameter_error("negative state size");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw parameter_error("probability must lie in [0,1], got " +
                          std::to_string(p));
  }
  std::vector<std::int8_t> values(static_cast<std::size_t>(n));
  for (auto& v : values) {
    v = rng.bernoulli(p) ? std::int8_t{1} : std::int8_t{-1};
  }
  return OpinionState(std::move(values));
}

OpinionCounts opinion_counts(const Graph& g, const OpinionState& x,
                             int vertex) {
  check_state(g, x);
  check_vertex(g, vertex);
  OpinionCounts counts;
  const std::int8_t own = x[vertex];
  for (int u : g.neighbors(vertex)) {
    if (x[u] == own) {
      ++counts.agree;
    } else {
      ++counts.disagree;
    }
  }
  return counts;
}

bool would_flip(const Graph& g, const OpinionState& x, int agent,
                int neighbor) {
  check_state(g, x);
  check_vertex(g, agent);
  check_vertex(g, neighbor);
  if (!g.adjacent(agent, neighbor)) {
    throw adjacency_error("vertices " + std::to_string(agent) + " and " +
                          std::to_string(neighbor) + " are not adjacent");
  }
  if (x[neighbor] == x[agent]) return false;
  const OpinionCounts counts = opinion_counts(g, x, agent);
  return counts.disagree > counts.agree;
}

StepOutcome step(const Graph& g, OpinionState& x, Rng& rng) {
  check_state(g, x);
  const int n = g.vertex_count();
  if (n < 2) {
    throw parameter_error("stepping needs at least two vertices");
  }
  StepOutcome outcome;
  outcome.agent = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
  const auto nbrs = g.neighbors(outcome.agent);
  outcome.neighbor =
      nbrs[rng.next_below(static_cast<std::uint32_t>(nbrs.size()))];
  if (x[outcome.neighbor] != x[outcome.agent]) {
    const OpinionCounts counts = opinion_counts(g, x, outcome.agent);
    if (counts.disagree > counts.agree) {
      outcome.flipped = true;
      outcome.z_decrement = 2LL * (counts.disagree - counts.agree);
      x.set(outcome.agent, x[outcome.neighbor]);
    }
  }
  return outcome;
}

std::int64_t potential_z(const Graph& g, const OpinionState& x) {
  check_state(g, x);
  std::int64_t disagreeing_edges = 0;
  for (auto [u, v] : g.edges()) {
    if (x[u] != x[v]) ++disagreeing_edges;
  }
  return 2 * disagreeing_edges + consensus_floor(g);
}

std::int64_t consensus_floor(const Graph& g) {
  const std::int64_t n = g.vertex_count();
  return n * (n - 1) - 2 * g.edge_count();
}

bool is_absorbing(const Graph& g, const OpinionState& x) {
  check_state(g, x);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const OpinionCounts counts = opinion_counts(g, x, v);
    if (counts.disagree > counts.agree) return false;
  }
  return true;
}

bool is_consensus(const OpinionState& x) {
  if (x.size() == 0) {
    throw parameter_error("consensus is undefined for an empty state");
  }
  for (int i = 1; i < x.size(); ++i) {
    if (x[i] != x[0]) return false;
  }
  return true;
}

std::int64_t default_max_steps(const Graph& g) {
  return 1'000'000LL * g.vertex_count();
}

RunRecord run_to_absorption(const Graph& g, OpinionState initial, Rng& rng,
                            const RunOptions& options) {
  check_state(g, initial);
  const int n = g.vertex_count();
  const std::int64_t budget =
      options.max_steps > 0 ? options.max_steps : default_max_steps(g);

  // Per-vertex agree/disagree counters plus an unstable-vertex count give an
  // O(1) absorption test per step and O(deg) maintenance per flip.
  std::vector<int> agree(n, 0), disagree(n, 0);
  std::vector<char> unstable(n, 0);
  int unstable_count = 0;
  OpinionState x = std::move(initial);
  for (int v = 0; v < n; ++v) {
    const OpinionCounts counts = opinion_counts(g, x, v);
    agree[v] = counts.agree;
    disagree[v] = counts.disagree;
    if (counts.disagree > counts.agree) {
      unstable[v] = 1;
      ++unstable_count;
    }
  }

  RunRecord rec;
  rec.initial = x;
  rec.z_initial = potential_z(g, x);

  std::int64_t z = rec.z_initial;
  std::int64_t steps = 0;
  std::int64_t flips = 0;
  if (options.record_z_trace) rec.z_trace.push_back(z);

  auto refresh = [&](int v) {
    const char now = disagree[v] > agree[v] ? 1 : 0;
    if (now != unstable[v]) {
      unstable[v] = now;
      unstable_count += now ? 1 : -1;
    }
  };

  while (unstable_count > 0) {
    if (steps >= budget) {
      rec.final_state = x;
      rec.steps_to_absorption = steps;
      rec.flips = flips;
      rec.consensus = false;
      rec.z_final = z;
      throw timeout_error("no absorption within " + std::to_string(budget) +
                              " steps",
                          std::move(rec));
    }
    const int agent =
        static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
    const auto nbrs = g.neighbors(agent);
    const int neighbor =
        nbrs[rng.next_below(static_cast<std::uint32_t>(nbrs.size()))];
    if (x[neighbor] != x[agent] && disagree[agent] > agree[agent]) {
      const std::int64_t decrement = 2LL * (disagree[agent] - agree[agent]);
      if (decrement < 2) {
        throw std::logic_error("flip without potential decrease");
      }
      x.set(agent, x[neighbor]);
      std::swap(agree[agent], disagree[agent]);
      refresh(agent);
      for (int u : nbrs) {
        if (x[u] == x[agent]) {
          ++agree[u];
          --disagree[u];
        } else {
          --agree[u];
          ++disagree[u];
        }
        refresh(u);
      }
      z -= decrement;
      ++flips;
    }
    ++steps;
    if (options.record_z_trace) rec.z_trace.push_back(z);
  }

  rec.final_state = x;
  rec.steps_to_absorption = steps;
  rec.flips = flips;
  rec.consensus = is_consensus(x);
  rec.z_final = z;

  // Cross-check the incremental bookkeeping against a fresh evaluation.
  if (z != potential_z(g, x)) {
    throw std::logic_error("incremental potential drifted from recomputation");
  }
  if (rec.consensus != (z == consensus_floor(g))) {
    throw std::logic_error("consensus flag disagrees with potential floor");
  }
  return rec;
}

}  // namespace majsim
