#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "majsim/dynamics.hpp"
#include "majsim/graph.hpp"
#include "majsim/rng.hpp"

namespace majsim {

/// Closed-form consensus lower bound 1 - 2p(1-p)|E|. Unclamped: a value
/// <= 0 is a vacuous bound and is reported as-is.
double consensus_bound(double p, std::int64_t edge_count);

/// Boundary case p <= 1/(2|E|): the bound is then at least 1/(2|E|).
/// Returns true vacuously when p exceeds the threshold.
bool corollary_holds(double p, std::int64_t edge_count);

/// A 3-edge path a-b-c-d with opinions (s, s, -s, -s) whose four vertices
/// all have degree at most 2. Such a quadruple never changes again, so the
/// configuration can never reach consensus.
struct BlockedPath {
  std::array<int, 4> vertices{};  // a, b, c, d
  std::int8_t polarity = 0;       // opinion of a and b
};

/// Exhaustive search over edges with opposite endpoint opinions, extended
/// one step each way. Returns the lexicographically smallest quadruple so
/// the result is deterministic; empty when none exists.
std::optional<BlockedPath> find_blocked_path(const Graph& g,
                                             const OpinionState& x);

/// Simulates `steps` selection events and reports whether the four blocked
/// vertices kept their opinions throughout. Throws parameter_error if the
/// quadruple is not a valid blocked path for (g, x).
bool verify_frozen(const Graph& g, const OpinionState& x, const BlockedPath& bp,
                   Rng& rng, std::int64_t steps);

/// Post-run validator: every vertex has at most as many disagreeing as
/// agreeing neighbors.
bool validate_absorbed_state(const Graph& g, const OpinionState& x);

/// One row of a bound-vs-measurement table. A bound <= 0 is reported as-is
/// but flagged vacuous: it constrains nothing.
struct BoundReport {
  std::string graph_id;
  int n = 0;
  std::int64_t m = 0;
  double p = 0.0;
  double bound = 0.0;
  bool vacuous = false;  // bound <= 0
  double exact_or_estimate = 0.0;
  std::string method;  // "exact" or "mc"
  bool satisfied = false;
};

}  // namespace majsim
