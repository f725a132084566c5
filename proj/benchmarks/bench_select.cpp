#include <benchmark/benchmark.h>

#include "npselect/select.hpp"
#include "npselect/synth.hpp"

using namespace npselect;

namespace {

struct Fixture {
    Matrix X;
    std::vector<double> Y;
    ModelParams params;
    TuningParams tune;

    Fixture(std::size_t n, int d) {
        Rng rng(12345);
        SparseAdditiveFunction f;
        f.d = d;
        f.relevant = {1, 2};
        f.amplitudes = {1.0, 1.0};
        X = gen_design(n, d, rng);
        Y = gen_sample(f, X, 0.1, rng);
        params.d = d;
        params.d_star = 2;
        params.g_min = 1.0;
        params.L = 1.0;
        params.kappa = 1.0;
        params.sigma = 0.1;
        params.L2 = std::sqrt(2.0);
        params.L_inf = 2.0 * std::sqrt(2.0);
        tune = tuning(params, static_cast<double>(n));
    }
};

}  // namespace

static void BM_EmpiricalCoeff(benchmark::State& state) {
    const Fixture fx(static_cast<std::size_t>(state.range(0)), 10);
    const MultiIndex k(10, {1}, {1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            empirical_coeff(fx.X, fx.Y, uniform_density(), k, Trig::cos));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EmpiricalCoeff)->Arg(10000)->Arg(100000);

static void BM_Select(benchmark::State& state) {
    const Fixture fx(static_cast<std::size_t>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            select_variables(fx.X, fx.Y, uniform_density(), fx.params, fx.tune, true));
    }
}
BENCHMARK(BM_Select)->Args({1000, 20})->Args({10000, 50});

BENCHMARK_MAIN();
