#include <benchmark/benchmark.h>

#include "pgcycles/space_embedder.hpp"
#include "pgcycles/verifier.hpp"

using namespace pgc;

namespace {

Geometry pg(int n, std::uint32_t p, std::uint32_t e = 1) {
    return Geometry(Field::make(p, e), n);
}

void BM_EmbedPG32Hamiltonian(benchmark::State& state) {
    const Geometry g = pg(3, 2);
    for (auto _ : state) benchmark::DoNotOptimize(embed_cycle(g, 15));
}
BENCHMARK(BM_EmbedPG32Hamiltonian);

void BM_EmbedPG33Hamiltonian(benchmark::State& state) {
    const Geometry g = pg(3, 3);
    for (auto _ : state) benchmark::DoNotOptimize(embed_cycle(g, 40));
}
BENCHMARK(BM_EmbedPG33Hamiltonian);

void BM_EmbedPG42Hamiltonian(benchmark::State& state) {
    const Geometry g = pg(4, 2);
    for (auto _ : state) benchmark::DoNotOptimize(embed_cycle(g, 31));
}
BENCHMARK(BM_EmbedPG42Hamiltonian);

void BM_AnchoredCyclePG33(benchmark::State& state) {
    const Geometry g = pg(3, 3);
    const Subspace anchor = g.canonical_hyperplane();
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(anchored_cycle(g, anchor, k));
}
BENCHMARK(BM_AnchoredCyclePG33)->Arg(11)->Arg(20)->Arg(29);

void BM_PlaneSearchBandQ5(benchmark::State& state) {
    const Geometry g = pg(2, 5);
    for (auto _ : state) benchmark::DoNotOptimize(plane_cycle(g, 30));
}
BENCHMARK(BM_PlaneSearchBandQ5);

void BM_CyclicHamiltonianQ5(benchmark::State& state) {
    const Geometry g = pg(2, 5);
    for (auto _ : state) benchmark::DoNotOptimize(singer_hamiltonian_cycle(g));
}
BENCHMARK(BM_CyclicHamiltonianQ5);

void BM_VerifyPG33Hamiltonian(benchmark::State& state) {
    const Geometry g = pg(3, 3);
    const CycleEmbedding c = embed_cycle(g, 40);
    for (auto _ : state) benchmark::DoNotOptimize(verify_cycle(g, c));
}
BENCHMARK(BM_VerifyPG33Hamiltonian);

}  // namespace

BENCHMARK_MAIN();
