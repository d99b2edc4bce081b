#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "majsim/errors.hpp"
#include "majsim/graph.hpp"
#include "majsim/rng.hpp"

namespace majsim {

/// Opinion vector over {+1, -1}, one entry per vertex.
class OpinionState {
 public:
  OpinionState() = default;

  /// Throws parameter_error unless every entry is exactly +1 or -1.
  explicit OpinionState(std::vector<std::int8_t> values);

  static OpinionState filled(int n, int value);

  /// Parses a '+'/'-' string, vertex 0 leftmost.
  static OpinionState parse(std::string_view text);
  std::string to_string() const;

  int size() const { return static_cast<int>(values_.size()); }
  std::int8_t operator[](int i) const { return values_[i]; }
  void set(int i, std::int8_t v) { values_[i] = v; }
  void flip(int i) { values_[i] = static_cast<std::int8_t>(-values_[i]); }
  const std::vector<std::int8_t>& values() const { return values_; }

  bool operator==(const OpinionState&) const = default;

 private:
  std::vector<std::int8_t> values_;
};

/// Bernoulli(p) initial condition: each vertex independently +1 with
/// probability p. Consumes exactly one draw per vertex, in vertex order.
OpinionState init_opinions(int n, double p, Rng& rng);

struct OpinionCounts {
  int agree = 0;
  int disagree = 0;
};

/// Neighbors of `vertex` that agree / disagree with its current opinion.
OpinionCounts opinion_counts(const Graph& g, const OpinionState& x, int vertex);

/// True iff selecting (agent, neighbor) flips the agent: the neighbor holds
/// the opposite opinion and strictly more of the agent's neighbors disagree
/// with the agent than agree. Ties never flip.
bool would_flip(const Graph& g, const OpinionState& x, int agent, int neighbor);

struct StepOutcome {
  int agent = -1;
  int neighbor = -1;
  bool flipped = false;
  std::int64_t z_decrement = 0;  // 2 * (disagree - agree) on a flip, else 0
};

/// One selection event: agent uniform on vertices, then neighbor uniform on
/// the agent's neighbors (two next_below draws, in that order). Mutates x in
/// place; at most the agent's coordinate changes.
StepOutcome step(const Graph& g, OpinionState& x, Rng& rng);

/// Pair potential: ordered pairs (i, j), i != j, that disagree or are
/// non-adjacent. Nonincreasing along every trajectory.
std::int64_t potential_z(const Graph& g, const OpinionState& x);

/// Minimum of potential_z, attained exactly at consensus: n(n-1) - 2|E|.
std::int64_t consensus_floor(const Graph& g);

/// True iff no selection can flip any vertex: disagree(i) <= agree(i) for
/// every vertex i.
bool is_absorbing(const Graph& g, const OpinionState& x);

/// True iff all entries are equal. Throws parameter_error on an empty state.
bool is_consensus(const OpinionState& x);

struct RunRecord {
  OpinionState initial;
  OpinionState final_state;
  std::int64_t steps_to_absorption = 0;  // selection events, nulls included
  std::int64_t flips = 0;
  bool consensus = false;
  std::int64_t z_initial = 0;
  std::int64_t z_final = 0;
  std::vector<std::int64_t> z_trace;  // z_0..z_T when requested, else empty
};

/// Raised when a trajectory exhausts its step budget; carries the state of
/// the run at the moment the budget ran out.
class timeout_error : public error {
 public:
  timeout_error(const std::string& message, RunRecord partial)
      : error(message), partial_(std::move(partial)) {}
  const RunRecord& partial() const { return partial_; }

 private:
  RunRecord partial_;
};

struct RunOptions {
  std::int64_t max_steps = 0;  // 0 = default_max_steps(g)
  bool record_z_trace = false;
};

/// Step budget that makes spurious timeouts negligible at desk scale.
std::int64_t default_max_steps(const Graph& g);

/// Runs selection events until the state is absorbing. Absorption is
/// checked before each step, so an absorbing input returns after 0 steps.
/// Keeps per-vertex agree/disagree counters so the check is O(1) per step.
/// Throws timeout_error with the partial record if max_steps elapse first.
RunRecord run_to_absorption(const Graph& g, OpinionState initial, Rng& rng,
                            const RunOptions& options = {});

}  // namespace majsim
