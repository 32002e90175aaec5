#include <benchmark/benchmark.h>

#include <cmath>

#include "domany/automaton.hpp"
#include "domany/percolation.hpp"

using namespace domany;

static void BM_label_clusters_hex(benchmark::State& state) {
    const auto L = std::int32_t(state.range(0));
    const BoxSpec box = BoxSpec::square_periodic(L);
    SpinConfiguration cfg = SpinConfiguration::random(box, 0.5, 42);
    for (auto _ : state) {
        ClusterLabeling labels = label_clusters(cfg, GraphKind::hex);
        benchmark::DoNotOptimize(labels.clusters().size());
    }
    state.SetItemsProcessed(state.iterations() * box.num_hex_sites());
}
BENCHMARK(BM_label_clusters_hex)->Arg(64)->Arg(256)->Arg(512);

static void BM_label_clusters_tri(benchmark::State& state) {
    const auto L = std::int32_t(state.range(0));
    const BoxSpec box = BoxSpec::square_periodic(L);
    TriConfiguration cfg =
        TriConfiguration::random(box, PairScheme::canonical(), 0.5, 42);
    for (auto _ : state) {
        ClusterLabeling labels = label_clusters(cfg);
        benchmark::DoNotOptimize(labels.clusters().size());
    }
    state.SetItemsProcessed(state.iterations() * box.num_cells());
}
BENCHMARK(BM_label_clusters_tri)->Arg(64)->Arg(256)->Arg(512);

static void BM_probe_cluster(benchmark::State& state) {
    const auto L = std::int32_t(state.range(0));
    const BoxSpec box = BoxSpec::square_periodic(L);
    SpinConfiguration cfg = SpinConfiguration::random(box, 0.55, 42);
    const double radius = std::sqrt(3.0) / 4.0 * L;
    ClusterScratch scratch;
    const SiteRef center{L / 2, L / 2, Sub::B};
    for (auto _ : state) {
        ClusterProbe probe = probe_cluster(cfg, center, GraphKind::hex, radius, scratch);
        benchmark::DoNotOptimize(probe.size);
    }
}
BENCHMARK(BM_probe_cluster)->Arg(64)->Arg(256)->Arg(512);

static void BM_rhombus_crossing(benchmark::State& state) {
    const auto L = std::int32_t(state.range(0));
    const BoxSpec box = BoxSpec::square_periodic(L);
    TriConfiguration cfg =
        TriConfiguration::random(box, PairScheme::canonical(), 0.5, 42);
    for (auto _ : state) {
        bool hit = rhombus_crossing(cfg, +1, CrossDir::u);
        benchmark::DoNotOptimize(hit);
    }
    state.SetItemsProcessed(state.iterations() * box.num_cells());
}
BENCHMARK(BM_rhombus_crossing)->Arg(64)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
