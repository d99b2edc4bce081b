#include <benchmark/benchmark.h>

#include <cstdint>

#include "majsim/dynamics.hpp"
#include "majsim/exact.hpp"
#include "majsim/graph.hpp"
#include "majsim/montecarlo.hpp"
#include "majsim/rng.hpp"

using namespace majsim;

// Selection-event dispatch on an already-absorbed state: the per-step floor
// every trajectory pays once it stops flipping.
static void BM_null_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = make_random_connected(n, n, 42);
  Rng rng(1);
  OpinionState x = OpinionState::filled(n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(g, x, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_null_step)->Arg(16)->Arg(64)->Arg(256);

// Whole trajectories from Bernoulli(1/2) initials; items = selection events.
static void BM_run_to_absorption(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = make_random_connected(n, n, 42);
  std::uint64_t trial = 0;
  std::int64_t steps = 0;
  for (auto _ : state) {
    Rng rng(derive_stream(7, trial++));
    OpinionState initial = init_opinions(n, 0.5, rng);
    const RunRecord rec = run_to_absorption(g, initial, rng);
    steps += rec.steps_to_absorption;
    benchmark::DoNotOptimize(rec.consensus);
  }
  state.SetItemsProcessed(steps);
}
BENCHMARK(BM_run_to_absorption)->Arg(16)->Arg(64)->Arg(256);

static void BM_transitions(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = make_cycle(n);
  StateIndex code = 0;
  const StateIndex mask = static_cast<StateIndex>((1u << n) - 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transitions(g, code));
    code = (code + 0x9E37u) & mask;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_transitions)->Arg(8)->Arg(12)->Arg(16);

// Full 2^n hit-probability solve; items = states settled.
static void BM_hit_probabilities(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = make_cycle(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(consensus_hit_probabilities(g));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_hit_probabilities)->Arg(10)->Arg(12)->Arg(14)->Arg(16);

static void BM_estimate_1k_trials(benchmark::State& state) {
  ExperimentConfig config;
  config.graph = GraphSpec::family("cycle", static_cast<int>(state.range(0)));
  config.p = 0.5;
  config.trials = 1000;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = seed++;
    benchmark::DoNotOptimize(estimate(config));
  }
  state.SetItemsProcessed(state.iterations() * config.trials);
}
BENCHMARK(BM_estimate_1k_trials)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
