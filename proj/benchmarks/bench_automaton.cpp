#include <benchmark/benchmark.h>

#include "domany/automaton.hpp"

using namespace domany;

static void BM_step(benchmark::State& state) {
    const auto L = std::int32_t(state.range(0));
    const BoxSpec box = BoxSpec::square_periodic(L);
    SpinConfiguration cfg = SpinConfiguration::random(box, 0.5, 42);
    for (auto _ : state) {
        StepStats s = step(cfg);
        benchmark::DoNotOptimize(s.flips);
    }
    state.SetItemsProcessed(state.iterations() * box.num_cells());
}
BENCHMARK(BM_step)->Arg(64)->Arg(256)->Arg(1024);

static void BM_run_to_fixation(benchmark::State& state) {
    const auto L = std::int32_t(state.range(0));
    const BoxSpec box = BoxSpec::square_periodic(L);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        state.PauseTiming();
        SpinConfiguration cfg = SpinConfiguration::random(box, 0.5, seed++);
        state.ResumeTiming();
        DynamicsTrace trace = run_to_fixation(cfg);
        benchmark::DoNotOptimize(trace.fixation_time);
    }
    state.SetItemsProcessed(state.iterations() * box.num_cells());
}
BENCHMARK(BM_run_to_fixation)->Arg(64)->Arg(256);

static void BM_tri_step(benchmark::State& state) {
    const auto L = std::int32_t(state.range(0));
    const BoxSpec box = BoxSpec::square_periodic(L);
    TriConfiguration cfg =
        TriConfiguration::random(box, PairScheme::canonical(), 0.5, 42);
    for (auto _ : state) {
        std::int64_t flips = tri_step(cfg);
        benchmark::DoNotOptimize(flips);
    }
    state.SetItemsProcessed(state.iterations() * box.num_cells());
}
BENCHMARK(BM_tri_step)->Arg(64)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
