#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

#include "majsim/dynamics.hpp"
#include "majsim/errors.hpp"
#include "majsim/exact.hpp"
#include "majsim/graph.hpp"
#include "majsim/rng.hpp"
#include "majsim/theory.hpp"

using namespace majsim;

TEST_CASE("closed-form bound on pinned inputs") {
  CHECK(consensus_bound(0.0, 7) == 1.0);
  CHECK(consensus_bound(1.0, 7) == 1.0);
  CHECK(consensus_bound(0.5, 4) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS(consensus_bound(-0.1, 3), parameter_error);
  CHECK_THROWS_AS(consensus_bound(1.1, 3), parameter_error);
  CHECK_THROWS_AS(consensus_bound(0.5, 0), parameter_error);
}

TEST_CASE("bound is symmetric in p and minimized at one half") {
  for (std::int64_t m : {1, 3, 10, 40}) {
    double floor_value = consensus_bound(0.5, m);
    for (int k = 0; k <= 10; ++k) {
      double p = 0.05 * k;
      CHECK(std::abs(consensus_bound(p, m) - consensus_bound(1.0 - p, m)) <=
            1e-12);
      CHECK(consensus_bound(p, m) >= floor_value - 1e-12);
    }
  }
}

TEST_CASE("boundary case of the bound is an exact identity") {
  for (std::int64_t m = 1; m <= 50; ++m) {
    double threshold = 1.0 / (2.0 * static_cast<double>(m));
    CHECK(std::abs(consensus_bound(threshold, m) - threshold) <= 1e-12);
  }
}

TEST_CASE("small-p corollary holds on and below its threshold") {
  CHECK(corollary_holds(0.1, 5));   // p = 1/(2m) exactly, bound = 0.1
  CHECK(corollary_holds(0.0, 9));   // bound = 1
  CHECK(corollary_holds(0.1, 3));   // bound = 0.46 >= 1/6
  CHECK(corollary_holds(0.9, 3));   // above threshold: vacuous
  for (std::int64_t m = 1; m <= 50; ++m) {
    double threshold = 1.0 / (2.0 * static_cast<double>(m));
    for (int k = 0; k <= 8; ++k) {
      CHECK(corollary_holds(threshold * k / 8.0, m));
    }
  }
}

TEST_CASE("blocked quadruple is found on the four-cycle") {
  Graph c4 = make_cycle(4);
  auto bp = find_blocked_path(c4, OpinionState::parse("++--"));
  REQUIRE(bp.has_value());
  CHECK(bp->vertices == std::array<int, 4>{0, 1, 2, 3});
  CHECK(bp->polarity == 1);
}

TEST_CASE("mirrored polarity counts as blocked too") {
  Graph c4 = make_cycle(4);
  auto bp = find_blocked_path(c4, OpinionState::parse("--++"));
  REQUIRE(bp.has_value());
  CHECK(bp->polarity == -1);
}

TEST_CASE("no quadruple without disagreement or on a star") {
  CHECK(!find_blocked_path(make_cycle(6), OpinionState::filled(6, 1)));
  // The hub has degree 5 and every 3-edge path passes through it.
  Graph star = make_star(6);
  CHECK(!find_blocked_path(star, OpinionState::parse("+--+-+")));
  CHECK(!find_blocked_path(star, OpinionState::parse("-++++-")));
}

TEST_CASE("degree cap excludes quadruples touching high-degree vertices") {
  // Triangle with a pendant path: 0-1-2-0 plus 2-3-4-5. The pattern sits on
  // 2,3,4,5 but deg(2) = 3 disqualifies it.
  Graph g(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}});
  CHECK(!find_blocked_path(g, OpinionState::parse("-++--+")).has_value());
  // Move the pattern fully onto the degree-<=2 tail and it qualifies.
  Graph tail(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
  auto bp = find_blocked_path(tail, OpinionState::parse("+++--++"));
  REQUIRE(bp.has_value());
  CHECK(bp->vertices == std::array<int, 4>{3, 4, 5, 6});
  CHECK(bp->polarity == -1);
}

TEST_CASE("search returns the lexicographically smallest quadruple") {
  // Two disjoint patterns on P_8; the one starting at vertex 0 wins.
  Graph p8 = make_path(8);
  auto bp = find_blocked_path(p8, OpinionState::parse("++--++--"));
  REQUIRE(bp.has_value());
  CHECK(bp->vertices == std::array<int, 4>{0, 1, 2, 3});
}

TEST_CASE("planted quadruples stay frozen under long simulation") {
  Graph c4 = make_cycle(4);
  OpinionState x = OpinionState::parse("++--");
  auto bp = find_blocked_path(c4, x);
  REQUIRE(bp.has_value());
  Rng rng(404);
  CHECK(verify_frozen(c4, x, *bp, rng, 100000));

  Graph p6 = make_path(6);
  OpinionState y = OpinionState::parse("-++--+");
  auto bq = find_blocked_path(p6, y);
  REQUIRE(bq.has_value());
  CHECK(bq->vertices == std::array<int, 4>{1, 2, 3, 4});
  CHECK(bq->polarity == 1);
  Rng rng2(405);
  CHECK(verify_frozen(p6, y, *bq, rng2, 100000));
}

TEST_CASE("frozen verifier rejects quadruples that do not match the state") {
  Graph c6 = make_cycle(6);
  OpinionState x = OpinionState::parse("++--++");
  BlockedPath fake;
  fake.vertices = {2, 3, 4, 5};
  fake.polarity = 1;  // claims 2,3 hold +1, but they hold -1
  Rng rng(1);
  CHECK_THROWS_AS(verify_frozen(c6, x, fake, rng, 10), parameter_error);
  BlockedPath not_a_path;
  not_a_path.vertices = {0, 1, 3, 4};  // 1-3 is not an edge
  not_a_path.polarity = 1;
  CHECK_THROWS_AS(verify_frozen(c6, x, not_a_path, rng, 10), parameter_error);
}

TEST_CASE("a found quadruple implies consensus is unreachable") {
  Rng rng(77);
  for (int round = 0; round < 60; ++round) {
    Graph g = round % 2 == 0 ? make_cycle(4 + round % 5)
                             : make_path(4 + round % 5);
    OpinionState x = init_opinions(g.vertex_count(), 0.5, rng);
    auto bp = find_blocked_path(g, x);
    if (!bp) continue;
    StateIndex code = encode_state(x);
    CHECK(!can_reach_consensus(g, code));
    Rng sim(900 + round);
    CHECK(verify_frozen(g, x, *bp, sim, 2000));
  }
}

TEST_CASE("absorbed-state validator matches the per-vertex inequality") {
  CHECK(validate_absorbed_state(make_cycle(5), OpinionState::filled(5, 1)));
  CHECK(validate_absorbed_state(make_cycle(5), OpinionState::parse("++---")));
  CHECK(!validate_absorbed_state(make_cycle(4), OpinionState::parse("+-+-")));
  Rng rng(31);
  for (int round = 0; round < 40; ++round) {
    Graph g = make_random_connected(7, round % 4, 3000 + round);
    OpinionState x = init_opinions(7, 0.5, rng);
    CHECK(validate_absorbed_state(g, x) == is_absorbing(g, x));
  }
}
