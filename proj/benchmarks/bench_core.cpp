#include <benchmark/benchmark.h>

#include <vector>

#include "svarkit/diagnostics.hpp"
#include "svarkit/rng.hpp"
#include "svarkit/svar.hpp"
#include "svarkit/synth.hpp"
#include "svarkit/unit_root.hpp"
#include "svarkit/var.hpp"

using namespace svarkit;

namespace {

const Simulation& sample(int length) {
    static std::vector<std::pair<int, Simulation>> cache;
    for (const auto& [n, sim] : cache) {
        if (n == length) return sim;
    }
    cache.emplace_back(length, simulate(reference_dgp(7), length));
    return cache.back().second;
}

void BM_FitVar(benchmark::State& state) {
    const auto& sim = sample(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fit_var(sim.series, 4));
}
BENCHMARK(BM_FitVar)->Arg(100)->Arg(500)->Arg(5000);

void BM_SelectLag(benchmark::State& state) {
    const auto& sim = sample(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(select_lag(sim.series, 8));
}
BENCHMARK(BM_SelectLag)->Arg(100)->Arg(500);

void BM_AdfAutoLag(benchmark::State& state) {
    Rng rng(3);
    std::vector<double> walk{0.0};
    for (int t = 1; t < state.range(0); ++t) walk.push_back(walk.back() + rng.normal());
    for (auto _ : state) benchmark::DoNotOptimize(adf_test(std::span<const double>(walk), Deterministic::constant));
}
BENCHMARK(BM_AdfAutoLag)->Arg(76)->Arg(2000);

void BM_IdentifyAndIrf(benchmark::State& state) {
    const VarModel m = fit_var(sample(500).series, 4);
    for (auto _ : state) {
        const StructuralModel sm = identify_long_run(m);
        benchmark::DoNotOptimize(compute_irf(sm, m, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_IdentifyAndIrf)->Arg(10)->Arg(400);

void BM_Diagnose(benchmark::State& state) {
    const VarModel m = fit_var(sample(500).series, 4);
    const StructuralModel sm = identify_long_run(m);
    const std::vector<int> lags{1, 2, 3, 4};
    for (auto _ : state) benchmark::DoNotOptimize(diagnose(sm, m, lags));
}
BENCHMARK(BM_Diagnose);

}  // namespace
BENCHMARK_MAIN();
