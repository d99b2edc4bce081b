#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "majsim/dynamics.hpp"
#include "majsim/errors.hpp"
#include "majsim/exact.hpp"
#include "majsim/graph.hpp"

using namespace majsim;

namespace {

// Reference kernel row assembled selection by selection from would_flip,
// with none of the library's merging shortcuts.
std::map<StateIndex, double> brute_force_row(const Graph& g, StateIndex code) {
  const int n = g.vertex_count();
  std::map<StateIndex, double> row;
  for (int i = 0; i < n; ++i) {
    for (int j : g.neighbors(i)) {
      double w = 1.0 / (static_cast<double>(n) * g.degree(i));
      OpinionState x = decode_state(code, n);
      StateIndex to = code;
      if (would_flip(g, x, i, j)) to = code ^ (StateIndex{1} << i);
      row[to] += w;
    }
  }
  return row;
}

// Reference reachability: memoized depth-first search over flip successors.
// Flips strictly lower the potential, so the search never revisits a state
// through a cycle of real moves.
std::vector<bool> brute_force_reachable(const Graph& g) {
  const int n = g.vertex_count();
  const StateIndex count = StateIndex{1} << n;
  std::vector<signed char> memo(count, -1);
  const StateIndex all_plus = count - 1;
  auto search = [&](auto&& self, StateIndex code) -> bool {
    if (memo[code] != -1) return memo[code] != 0;
    if (code == 0 || code == all_plus) {
      memo[code] = 1;
      return true;
    }
    memo[code] = 0;
    OpinionState x = decode_state(code, n);
    bool hit = false;
    for (int i = 0; i < n && !hit; ++i) {
      for (int j : g.neighbors(i)) {
        if (would_flip(g, x, i, j)) {
          hit = self(self, code ^ (StateIndex{1} << i));
          break;  // every disagreeing neighbor flips i to the same state
        }
      }
    }
    memo[code] = hit ? 1 : 0;
    return hit;
  };
  std::vector<bool> out(count);
  for (StateIndex s = 0; s < count; ++s) out[s] = search(search, s);
  return out;
}

}  // namespace

TEST_CASE("state codes and opinion vectors are bijective") {
  // Bit b of the code set <=> x_b = +1.
  CHECK(decode_state(0b011, 3).to_string() == "++-");
  CHECK(encode_state(OpinionState::parse("++-")) == 0b011);
  for (int n = 1; n <= 6; ++n) {
    for (StateIndex code = 0; code < (StateIndex{1} << n); ++code) {
      CHECK(encode_state(decode_state(code, n)) == code);
    }
  }
}

TEST_CASE("kernel rows match per-selection accounting") {
  for (const Graph& g : {make_complete(4), make_cycle(5), make_path(5),
                         make_star(5), make_random_connected(6, 3, 9)}) {
    const StateIndex count = StateIndex{1} << g.vertex_count();
    for (StateIndex code = 0; code < count; ++code) {
      auto expect = brute_force_row(g, code);
      double total = 0.0;
      std::map<StateIndex, double> got;
      for (const Transition& t : transitions(g, code)) {
        CHECK(got.count(t.to) == 0);  // successors are merged
        got[t.to] = t.probability;
        total += t.probability;
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
      REQUIRE(got.size() == expect.size());
      for (auto [to, w] : expect) {
        REQUIRE(got.count(to) == 1);
        CHECK(std::abs(got[to] - w) <= 1e-12);
      }
    }
  }
}

TEST_CASE("absorbing states self-loop with probability one") {
  Graph c4 = make_cycle(4);
  StateIndex frozen = encode_state(OpinionState::parse("++--"));
  auto row = transitions(c4, frozen);
  REQUIRE(row.size() == 1);
  CHECK(row[0].to == frozen);
  CHECK(row[0].probability == doctest::Approx(1.0).epsilon(1e-12));

  StateIndex consensus = encode_state(OpinionState::parse("++++"));
  row = transitions(c4, consensus);
  REQUIRE(row.size() == 1);
  CHECK(row[0].to == consensus);
}

TEST_CASE("antagonistic pair splits its mass between the consensus states") {
  Graph k2 = make_complete(2);
  StateIndex split = encode_state(OpinionState::parse("+-"));
  std::map<StateIndex, double> got;
  for (const Transition& t : transitions(k2, split)) got[t.to] = t.probability;
  REQUIRE(got.size() == 2);
  CHECK(got[0b00] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(got[0b11] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("hit probabilities honor the boundary exactly") {
  Graph c4 = make_cycle(4);
  std::vector<double> h = consensus_hit_probabilities(c4);
  CHECK(h[0b0000] == 1.0);
  CHECK(h[0b1111] == 1.0);
  for (StateIndex frozen : {0b0011u, 0b0110u, 0b1100u, 0b1001u}) {
    CHECK(h[frozen] == 0.0);
  }
  for (double v : h) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("triangle with a lone dissenter reaches consensus surely") {
  Graph k3 = make_complete(3);
  std::vector<double> h = consensus_hit_probabilities(k3);
  CHECK(h[encode_state(OpinionState::parse("++-"))] ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hit probabilities satisfy the kernel fixed-point equation") {
  for (const Graph& g : {make_cycle(5), make_path(6), make_star(5),
                         make_random_connected(7, 4, 21)}) {
    std::vector<double> h = consensus_hit_probabilities(g);
    const StateIndex count = StateIndex{1} << g.vertex_count();
    for (StateIndex s = 0; s < count; ++s) {
      double rhs = 0.0;
      for (const Transition& t : transitions(g, s)) {
        rhs += t.probability * h[t.to];
      }
      CHECK(std::abs(h[s] - rhs) <= 1e-10);
    }
  }
}

TEST_CASE("sweep solver and dense elimination agree") {
  for (const Graph& g : {make_complete(5), make_cycle(7), make_path(8),
                         make_star(6), make_random_connected(8, 5, 33)}) {
    std::vector<double> sweep = consensus_hit_probabilities(g);
    std::vector<double> dense = consensus_hit_probabilities_dense(g);
    REQUIRE(sweep.size() == dense.size());
    for (std::size_t s = 0; s < sweep.size(); ++s) {
      CHECK(std::abs(sweep[s] - dense[s]) <= 1e-10);
    }
  }
}

TEST_CASE("absorbing enumeration matches known counts") {
  CHECK(enumerate_absorbing(make_path(2)).size() == 2);
  CHECK(enumerate_absorbing(make_path(4)).size() == 4);
  CHECK(enumerate_absorbing(make_path(6)).size() == 10);
  CHECK(enumerate_absorbing(make_cycle(4)).size() == 6);
  CHECK(enumerate_absorbing(make_cycle(5)).size() == 12);
  CHECK(enumerate_absorbing(make_cycle(6)).size() == 20);
  CHECK(enumerate_absorbing(make_star(6)).size() == 2);
  for (int n = 3; n <= 7; ++n) {
    auto abs = enumerate_absorbing(make_complete(n));
    REQUIRE(abs.size() == 2);
    CHECK(abs[0] == 0u);
    CHECK(abs[1] == (StateIndex{1} << n) - 1);
  }
}

TEST_CASE("absorbing enumeration agrees with the state-by-state check") {
  for (const Graph& g : {make_cycle(6), make_path(7),
                         make_random_connected(7, 3, 55)}) {
    auto listed = enumerate_absorbing(g);
    std::size_t idx = 0;
    const StateIndex count = StateIndex{1} << g.vertex_count();
    for (StateIndex s = 0; s < count; ++s) {
      bool absorbing = is_absorbing(g, decode_state(s, g.vertex_count()));
      bool in_list = idx < listed.size() && listed[idx] == s;
      CHECK(absorbing == in_list);
      if (in_list) ++idx;
    }
    CHECK(idx == listed.size());
  }
}

TEST_CASE("reachability matches an independent graph search") {
  for (const Graph& g : {make_cycle(6), make_cycle(8), make_path(6),
                         make_path(8), make_star(5),
                         make_random_connected(8, 4, 77)}) {
    std::vector<bool> expect = brute_force_reachable(g);
    std::vector<bool> got = consensus_reachable_states(g);
    REQUIRE(expect.size() == got.size());
    for (std::size_t s = 0; s < expect.size(); ++s) {
      CHECK(expect[s] == got[s]);
    }
  }
}

TEST_CASE("five-cycle frozen and recoverable states") {
  Graph c5 = make_cycle(5);
  StateIndex frozen = encode_state(OpinionState::parse("++---"));
  StateIndex saved = encode_state(OpinionState::parse("++-+-"));
  CHECK(!can_reach_consensus(c5, frozen));
  CHECK(can_reach_consensus(c5, saved));
  std::vector<double> h = consensus_hit_probabilities(c5);
  CHECK(h[frozen] == 0.0);
  CHECK(h[saved] > 0.0);
  CHECK(h[saved] < 1.0);  // flipping vertex 3 first leads into the frozen state
  CHECK(can_reach_consensus(c5, 0b11111u));
}

TEST_CASE("positive hit probability coincides with reachability") {
  for (const Graph& g : {make_cycle(7), make_path(7),
                         make_random_connected(7, 2, 91)}) {
    std::vector<double> h = consensus_hit_probabilities(g);
    std::vector<bool> reach = consensus_reachable_states(g);
    for (std::size_t s = 0; s < h.size(); ++s) {
      CHECK((h[s] > 1e-12) == reach[s]);
    }
  }
}

TEST_CASE("aggregate consensus probability on known instances") {
  Graph c4 = make_cycle(4);
  ExactAnalysis a = exact_consensus_probability(c4, 0.5);
  CHECK(a.n == 4);
  CHECK(a.p_initial == 0.5);
  CHECK(std::abs(a.p_consensus - 0.75) <= 1e-9);
  CHECK(a.absorbing.size() == 6);
  REQUIRE(a.h.size() == 16);

  for (int n = 2; n <= 7; ++n) {
    for (double p : {0.2, 0.5, 0.8}) {
      CHECK(std::abs(exact_consensus_probability(make_complete(n), p)
                         .p_consensus -
                     1.0) <= 1e-9);
    }
  }

  // All initial mass on the all-plus state.
  CHECK(exact_consensus_probability(make_cycle(6), 1.0).p_consensus ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("aggregate equals the direct product-law sum") {
  Graph g = make_path(5);
  double p = 0.3;
  std::vector<double> h = consensus_hit_probabilities(g);
  double direct = 0.0;
  for (StateIndex s = 0; s < (StateIndex{1} << 5); ++s) {
    double mass = 1.0;
    for (int i = 0; i < 5; ++i) {
      mass *= (s >> i & 1u) ? p : 1.0 - p;
    }
    direct += mass * h[s];
  }
  CHECK(std::abs(exact_consensus_probability(g, p).p_consensus - direct) <=
        1e-12);
}

TEST_CASE("aggregate is symmetric under p versus one minus p") {
  for (const Graph& g : {make_cycle(6), make_path(6), make_star(5),
                         make_random_connected(7, 3, 13)}) {
    for (double p : {0.1, 0.25, 0.4}) {
      double a = exact_consensus_probability(g, p).p_consensus;
      double b = exact_consensus_probability(g, 1.0 - p).p_consensus;
      CHECK(std::abs(a - b) <= 1e-12);
    }
  }
}

TEST_CASE("aggregate dominates the closed-form bound") {
  for (const Graph& g : {make_cycle(5), make_path(6), make_star(6),
                         make_random_connected(8, 4, 17)}) {
    for (int k = 1; k <= 19; ++k) {
      double p = 0.05 * k;
      double bound =
          1.0 - 2.0 * p * (1.0 - p) * static_cast<double>(g.edge_count());
      CHECK(exact_consensus_probability(g, p).p_consensus >= bound - 1e-9);
    }
  }
}

TEST_CASE("enumeration rejects graphs above the cap") {
  Graph big = make_path(kExactVertexCap + 1);
  CHECK_THROWS_AS(transitions(big, 0), capacity_error);
  CHECK_THROWS_AS(consensus_hit_probabilities(big), capacity_error);
  CHECK_THROWS_AS(enumerate_absorbing(big), capacity_error);
  CHECK_THROWS_AS(consensus_reachable_states(big), capacity_error);
  CHECK_THROWS_AS(exact_consensus_probability(big, 0.5), capacity_error);

  Graph above_dense = make_path(kDenseVertexCap + 1);
  CHECK_THROWS_AS(consensus_hit_probabilities_dense(above_dense),
                  capacity_error);
  CHECK_THROWS_AS(exact_consensus_probability(make_cycle(4), 1.5),
                  parameter_error);
}
