#include <benchmark/benchmark.h>

#include "npselect/lattice.hpp"

using namespace npselect;

static void BM_RepresentationNumbers(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const long radius = state.range(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(representation_numbers(dim, radius));
    }
}
BENCHMARK(BM_RepresentationNumbers)->Args({50, 50})->Args({200, 200})->Args({400, 100});

static void BM_CountExact(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_exact(dim, dim));
    }
}
BENCHMARK(BM_CountExact)->Arg(25)->Arg(100)->Arg(200);

static void BM_EnumerateBall(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const long radius_sq = state.range(1);
    const int ell = static_cast<int>(state.range(2));
    for (auto _ : state) {
        BallEnumerator en(d, radius_sq, ell);
        std::size_t count = 0;
        while (en.next()) ++count;
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_EnumerateBall)->Args({50, 4, 2})->Args({20, 8, 3});

BENCHMARK_MAIN();
