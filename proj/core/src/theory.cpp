#include "majsim/theory.hpp"

#include <cmath>
#include <string>

#include "majsim/errors.hpp"

namespace majsim {

namespace {

constexpr double kTolerance = 1e-12;

bool quadruple_valid(const Graph& g, const OpinionState& x,
                     const BlockedPath& bp) {
  const auto [a, b, c, d] = bp.vertices;
  const int n = g.vertex_count();
  for (int v : bp.vertices) {
    if (v < 0 || v >= n) return false;
  }
  if (a == b || a == c || a == d || b == c || b == d || c == d) return false;
  if (!g.adjacent(a, b) || !g.adjacent(b, c) || !g.adjacent(c, d)) return false;
  for (int v : bp.vertices) {
    if (g.degree(v) > 2) return false;
  }
  const std::int8_t s = bp.polarity;
  return s != 0 && x[a] == s && x[b] == s && x[c] == -s && x[d] == -s;
}

}  // namespace

double consensus_bound(double p, std::int64_t edge_count) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw parameter_error("probability must lie in [0,1], got " +
                          std::to_string(p));
  }
  if (edge_count < 1) {
    throw parameter_error("edge count must be positive");
  }
  return 1.0 - 2.0 * p * (1.0 - p) * static_cast<double>(edge_count);
}

bool corollary_holds(double p, std::int64_t edge_count) {
  const double threshold = 1.0 / (2.0 * static_cast<double>(edge_count));
  if (p > threshold + kTolerance) return true;
  return consensus_bound(p, edge_count) + kTolerance >= threshold;
}

std::optional<BlockedPath> find_blocked_path(const Graph& g,
                                             const OpinionState& x) {
  if (x.size() != g.vertex_count()) {
    throw parameter_error("opinion state size does not match graph");
  }
  std::optional<BlockedPath> best;
  // Middle edge first: both orientations of every disagreeing edge (b, c),
  // then extend by matching neighbors on each side.
  for (auto [u, v] : g.edges()) {
    for (auto [b, c] : {std::pair{u, v}, std::pair{v, u}}) {
      if (x[b] == x[c]) continue;
      if (g.degree(b) > 2 || g.degree(c) > 2) continue;
      for (int a : g.neighbors(b)) {
        if (a == c || x[a] != x[b] || g.degree(a) > 2) continue;
        for (int d : g.neighbors(c)) {
          if (d == b || d == a || x[d] != x[c] || g.degree(d) > 2) continue;
          BlockedPath candidate{{a, b, c, d}, x[b]};
          if (!best || candidate.vertices < best->vertices) best = candidate;
        }
      }
    }
  }
  return best;
}

bool verify_frozen(const Graph& g, const OpinionState& x, const BlockedPath& bp,
                   Rng& rng, std::int64_t steps) {
  if (!quadruple_valid(g, x, bp)) {
    throw parameter_error("quadruple is not a blocked path for this state");
  }
  OpinionState state = x;
  for (std::int64_t t = 0; t < steps; ++t) {
    step(g, state, rng);
    for (int v : bp.vertices) {
      if (state[v] != x[v]) return false;
    }
  }
  return true;
}

bool validate_absorbed_state(const Graph& g, const OpinionState& x) {
  if (x.size() != g.vertex_count()) {
    throw parameter_error("opinion state size does not match graph");
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    const OpinionCounts counts = opinion_counts(g, x, v);
    if (counts.disagree > counts.agree) return false;
  }
  return true;
}

}  // namespace majsim
