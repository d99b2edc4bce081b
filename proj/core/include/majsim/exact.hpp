#pragma once

#include <cstdint>
#include <vector>

#include "majsim/dynamics.hpp"
#include "majsim/graph.hpp"

namespace majsim {

/// Opinion configurations packed into bits: bit i set <=> x_i = +1.
using StateIndex = std::uint32_t;

/// Largest vertex count the enumeration routines accept (2^16 states).
inline constexpr int kExactVertexCap = 16;

/// Largest vertex count for the dense elimination cross-check.
inline constexpr int kDenseVertexCap = 10;

StateIndex encode_state(const OpinionState& x);
OpinionState decode_state(StateIndex code, int n);

struct Transition {
  StateIndex to;
  double probability;
};

/// Outgoing distribution of one state under the selection law (agent
/// uniform on vertices, neighbor uniform on its neighbors). Successors are
/// merged, so each entry is distinct; probabilities sum to 1.
std::vector<Transition> transitions(const Graph& g, StateIndex code);

/// Probability of eventually reaching a consensus state, for every code.
/// Boundary values are exact: 1 on the two consensus codes, 0 on every
/// other absorbing code. Solved by value-iteration sweeps in increasing
/// potential order until the largest change drops below 1e-12; every flip
/// strictly lowers the potential, so the sweeps settle after one pass.
std::vector<double> consensus_hit_probabilities(const Graph& g);

/// Independent route to the same vector: assemble the transient linear
/// system and run Gaussian elimination with partial pivoting. Capped at
/// kDenseVertexCap vertices; used to cross-check the sweep solver.
std::vector<double> consensus_hit_probabilities_dense(const Graph& g);

/// All absorbing codes: no selection can flip any vertex.
std::vector<StateIndex> enumerate_absorbing(const Graph& g);

/// For every code, whether some positive-probability path reaches one of
/// the two consensus codes.
std::vector<bool> consensus_reachable_states(const Graph& g);

bool can_reach_consensus(const Graph& g, StateIndex code);

struct ExactAnalysis {
  int n = 0;
  double p_initial = 0.0;
  double p_consensus = 0.0;
  std::vector<StateIndex> absorbing;
  std::vector<double> h;  // indexed by code
};

/// Exact P(consensus) under Bernoulli(p) initial opinions, aggregated in
/// closed form over the product law.
ExactAnalysis exact_consensus_probability(const Graph& g, double p);

}  // namespace majsim
