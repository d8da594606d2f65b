// Copyright 2026 The dpbw Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference against the OpenMP kernels. Arg 0 is serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "dpbw/equilibrium.hpp"
#include "dpbw/instances.hpp"
#include "dpbw/sim.hpp"
#include "dpbw/two_pool.hpp"

namespace {

using dpbw::Execution;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

const dpbw::TwoPoolGame& gstar() {
  static const dpbw::TwoPoolGame g = dpbw::make_two_pool(18.0, 2.0, 3.0, 0.8, 0.8);
  return g;
}

void BM_Enumerate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dpbw::enumerate_equilibria_2pool(gstar(), 256, dpbw::kCertifyTolerance, mode(state)));
  }
}

void BM_Theorem1(benchmark::State& state) {
  dpbw::SplitMix64 rng = dpbw::make_stream(1, 0);
  const dpbw::ValidatedGame game =
      dpbw::validate_game(dpbw::random_game(rng, 5, dpbw::AlphaRule::kAtBound));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpbw::verify_theorem1(game, 10000, 1, mode(state)));
  }
}

void BM_ClaimSuite(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpbw::claim_suite(gstar(), 1000, mode(state)));
  }
}

void BM_ClosedFormGap(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpbw::max_closed_form_gap(gstar(), 10000, 1, mode(state)));
  }
}

void BM_Replicas(benchmark::State& state) {
  const dpbw::ValidatedGame game = gstar().validated();
  const auto x = dpbw::StrategyProfile::two_pool(1.0, 0.0);
  dpbw::SimConfig cfg;
  cfg.rounds_per_epoch = 20000;
  cfg.epochs = 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpbw::simulate_replicas(game, x, cfg, 8, mode(state)));
  }
}

}  // namespace

BENCHMARK(BM_Enumerate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Theorem1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClaimSuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosedFormGap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Replicas)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
