#include "harmspace/adjustment.hpp"
#include "harmspace/evaluation.hpp"
#include "harmspace/filter.hpp"
#include "harmspace/harmonic.hpp"
#include "harmspace/signal.hpp"
#include "harmspace/synth.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace {

using namespace harmspace;

std::vector<double> test_signal(std::size_t n) {
    std::vector<double> x(n);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> noise(-0.1, 0.1);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = std::cos(2.0 * std::numbers::pi * 50.0 * static_cast<double>(i) / 48000.0) +
               noise(rng);
    return x;
}

void BM_HilbertEnvelope(benchmark::State& state) {
    const auto x = test_signal(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hilbert_envelope(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HilbertEnvelope)->Arg(1920)->Arg(5760)->Arg(8196)->Arg(11520);

void BM_SpectrumBins(benchmark::State& state) {
    const auto x = test_signal(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(spectrum_bins(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpectrumBins)->Arg(1920)->Arg(5761)->Arg(8196);

void BM_ButterworthZeroPhase(benchmark::State& state) {
    const auto x = test_signal(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(butterworth_zero_phase_lowpass(x, 48000.0, 6000.0, 4));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ButterworthZeroPhase)->Arg(48000);

void BM_ExtractHarmonicRows(benchmark::State& state) {
    HarmonicConfig cfg;
    cfg.use_hilbert = state.range(0) != 0;
    const auto x = test_signal(48000);
    for (auto _ : state) benchmark::DoNotOptimize(extract_harmonic_rows(x, 50.0, cfg));
}
BENCHMARK(BM_ExtractHarmonicRows)->Arg(0)->Arg(1);

void BM_FitAdjustment(benchmark::State& state) {
    const auto n_features = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> dist(-30.0, 0.0);
    std::vector<double> fo;
    std::vector<double> to;
    for (double rpm : {1000, 2000, 3000, 4000, 5000, 6000})
        for (double nm : {0, 10, 20}) {
            for (int rep = 0; rep < 10; ++rep) {
                fo.push_back(rpm / 60.0);
                to.push_back(nm);
            }
        }
    Matrix h(fo.size(), n_features);
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = dist(rng);
    for (auto _ : state) benchmark::DoNotOptimize(fit_adjustment(h, fo, to));
}
BENCHMARK(BM_FitAdjustment)->Arg(240)->Arg(1024);

void BM_SelectKStar(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix pts(n, 2);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool faulty = i % 3 == 0;
        pts(i, 0) = gauss(rng) + (faulty ? 3.0 : 0.0);
        pts(i, 1) = gauss(rng);
        labels[i] = faulty ? 1 : 0;
    }
    for (auto _ : state) benchmark::DoNotOptimize(select_k_star(pts, labels, n / 5));
}
BENCHMARK(BM_SelectKStar)->Arg(200)->Arg(800);

void BM_GenerateRecording(benchmark::State& state) {
    const auto specs = default_bearing_set();
    ConditionGrid grid = default_grid();
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_recording(specs[3], 3000.0, 10.0, 42, grid));
}
BENCHMARK(BM_GenerateRecording);

} // namespace

BENCHMARK_MAIN();
