#include <benchmark/benchmark.h>

#include "alphacoh/coherence.hpp"
#include "alphacoh/gram_schmidt.hpp"
#include "alphacoh/pdist.hpp"

using namespace alphacoh;

namespace {

void BM_HusimiEval(benchmark::State& state) {
    const FockVector cat = cat_state(CoherentLabel{1.5, 0.0}, Parity::even, 60);
    const CoherentLabel z{0.7, -0.4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(husimi(cat, z));
    }
}
BENCHMARK(BM_HusimiEval);

void BM_MaximizeOverlap(benchmark::State& state) {
    const FockVector cat = cat_state(CoherentLabel{1.5, 0.0}, Parity::even, 60);
    for (auto _ : state) {
        benchmark::DoNotOptimize(maximize_overlap(cat));
    }
}
BENCHMARK(BM_MaximizeOverlap)->Unit(benchmark::kMillisecond);

void BM_GreedyDecompose(benchmark::State& state) {
    const FockVector cat = cat_state(CoherentLabel{2.0, 0.0}, Parity::even, 60);
    const int terms = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(greedy_decompose(cat, terms, 1e-9, 1));
    }
}
BENCHMARK(BM_GreedyDecompose)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AlphaCoherence(benchmark::State& state) {
    const FockVector cat = cat_state(CoherentLabel{1.0, 0.0}, Parity::even, 60);
    for (auto _ : state) {
        benchmark::DoNotOptimize(alpha_coherence(cat, Measure::rel_entropy));
    }
}
BENCHMARK(BM_AlphaCoherence)->Unit(benchmark::kMillisecond);

void BM_CnotUnitary(benchmark::State& state) {
    const CoherentLabel label{1.3, 0.4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_cnot_unitary(label, 4, 60, 8));
    }
}
BENCHMARK(BM_CnotUnitary)->Unit(benchmark::kMillisecond);

void BM_NegativityQuadrature(benchmark::State& state) {
    const PDensity pat = PDensity::photon_added_thermal(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(negativity(pat).value);
    }
}
BENCHMARK(BM_NegativityQuadrature)->Unit(benchmark::kMillisecond);

void BM_Beamsplitter(benchmark::State& state) {
    const PDensity pat = PDensity::photon_added_thermal(0.5);
    const PDensity th = PDensity::thermal(0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(transform_beamsplitter(pat, th, 0.7));
    }
}
BENCHMARK(BM_Beamsplitter)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
