#include <benchmark/benchmark.h>

#include "npselect/theta.hpp"

using namespace npselect;

static void BM_ThetaH(benchmark::State& state) {
    const double z = static_cast<double>(state.range(0)) / 100.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta_h(z));
    }
}
BENCHMARK(BM_ThetaH)->Arg(30)->Arg(90)->Arg(97);

static void BM_SolveSaddle(benchmark::State& state) {
    const double gamma = static_cast<double>(state.range(0)) / 4.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_saddle(gamma));
    }
}
BENCHMARK(BM_SolveSaddle)->Arg(1)->Arg(4)->Arg(32);

static void BM_AsymptoticCounts(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(asymptotic_counts(static_cast<int>(state.range(0)), 1.0));
    }
}
BENCHMARK(BM_AsymptoticCounts)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
