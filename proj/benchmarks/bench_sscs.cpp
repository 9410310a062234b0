#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "sscs/correlators.hpp"
#include "sscs/log_combination.hpp"
#include "sscs/noise_synth.hpp"
#include "sscs/pipeline.hpp"
#include "sscs/rng.hpp"
#include "sscs/spectrum.hpp"

namespace {

std::vector<double> random_signs(std::size_t n, std::uint64_t seed) {
    sscs::rng::CounterRng r(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = r.uniform() < 0.5 ? -1.0 : 1.0;
    return v;
}

void lag_sums(benchmark::State& state, sscs::CorrelatorMethod method) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_signs(n, 1), b = random_signs(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sscs::cross_lag_sums(a, b, n - 1, method));
    }
    state.SetComplexityN(state.range(0));
}

void BM_LagSumsFft(benchmark::State& state) { lag_sums(state, sscs::CorrelatorMethod::fft); }
void BM_LagSumsDirect(benchmark::State& state) { lag_sums(state, sscs::CorrelatorMethod::direct); }

void BM_Synthesize(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const sscs::PsdSpec spec = sscs::default_simulation_spec().spec;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sscs::synthesize(spec, n, 250e-6, ++seed));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

// One batch of the cross path from shots to binned spectrum.
void BM_AnalyzeBatch(benchmark::State& state) {
    sscs::PipelineConfig cfg = sscs::default_pipeline_config(static_cast<std::size_t>(state.range(0)), 1);
    cfg.analysis.auto_spectra = false;
    cfg.analysis.ratio_floor = 3.0;
    const sscs::ShotRecord shots = sscs::simulate_batch(cfg, sscs::synth_batch(cfg, 0), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sscs::analyze_batch(shots, cfg.analysis));
    }
}

void BM_SpectrumFromU(benchmark::State& state) {
    sscs::PipelineConfig cfg = sscs::default_pipeline_config(static_cast<std::size_t>(state.range(0)), 1);
    const sscs::ShotRecord shots = sscs::simulate_batch(cfg, sscs::synth_batch(cfg, 0), 0);
    const sscs::CorrelatorPair pair = sscs::estimate_correlators(shots, 1, 2);
    const sscs::LogCombination u1 = sscs::compute_U(pair, 1, 3.0);
    const sscs::LogCombination u2 = sscs::compute_U(pair, 2, 3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sscs::spectrum_from_U(u1, u2, sscs::PrefactorMode::quasi_static, 32, 3.0));
    }
}

}  // namespace

BENCHMARK(BM_LagSumsFft)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();
BENCHMARK(BM_LagSumsDirect)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity();
BENCHMARK(BM_Synthesize)->RangeMultiplier(8)->Range(1 << 12, 1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeBatch)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectrumFromU)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
