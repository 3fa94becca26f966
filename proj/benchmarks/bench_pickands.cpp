#include "pickands/closed_form.hpp"
#include "pickands/estimator.hpp"
#include "pickands/fbm.hpp"
#include "pickands/monte_carlo.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

using namespace pickands;

namespace {

void BM_normal_stream(benchmark::State& state) {
    NormalStream rng(1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.next());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_normal_stream);

void BM_synthesize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SpectralPlan plan = build_spectral_plan_increments(0.5, 0.1, n);
    std::vector<double> out(static_cast<size_t>(n));
    NormalStream rng(1, 0);
    for (auto _ : state) {
        plan.synthesize(rng, out.data());
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_synthesize)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_sample_path(benchmark::State& state) {
    const GridSpec grid = GridSpec::make(0.75, 0.1, 0.05 * state.range(0));
    const SpectralPlan plan = build_spectral_plan(grid);
    FbmPath path;
    std::uint64_t rep = 0;
    for (auto _ : state) {
        NormalStream rng(1, rep++);
        sample_path(plan, grid, rng, path);
        benchmark::DoNotOptimize(path.z.data());
    }
    state.SetItemsProcessed(state.iterations() * grid.point_count());
}
BENCHMARK(BM_sample_path)->Arg(64)->Arg(512);

void BM_xi_kernel(benchmark::State& state) {
    const GridSpec grid = GridSpec::make(0.75, 0.1, 0.05 * state.range(0));
    const SpectralPlan plan = build_spectral_plan(grid);
    NormalStream rng(1, 0);
    const FbmPath path = sample_path(plan, grid, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(xi_truncated(path).xi);
    }
    state.SetItemsProcessed(state.iterations() * grid.point_count());
}
BENCHMARK(BM_xi_kernel)->Arg(64)->Arg(512);

void BM_campaign(benchmark::State& state) {
    const CampaignConfig cfg{0.5, 0.5, 4.0, 2000, 1, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_campaign(cfg).mean);
    }
    state.SetItemsProcessed(state.iterations() * cfg.reps);
}
BENCHMARK(BM_campaign)->Unit(benchmark::kMillisecond);

void BM_h1_delta(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(h1_delta(0.01).value);
    }
}
BENCHMARK(BM_h1_delta)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
