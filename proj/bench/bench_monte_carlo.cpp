// Serial reference vs OpenMP Monte-Carlo driver on a desk-scale fig3 scenario,
// plus the per-step cost of each filter at N = 80.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "rl1lae/config.hpp"
#include "rl1lae/experiment.hpp"
#include "rl1lae/signals.hpp"

namespace {

rl1lae::ScenarioConfig scenario(std::size_t runs) {
    rl1lae::ScenarioConfig c = rl1lae::find_preset("fig3").config;
    c.num_runs = runs;
    c.iterations = 3000;
    c.resolve();
    return c;
}

void BM_MonteCarloSerial(benchmark::State& state) {
    const auto c = scenario(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = rl1lae::run_monte_carlo_serial(c);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_MonteCarloOpenMP(benchmark::State& state) {
    const auto c = scenario(static_cast<std::size_t>(state.range(0)));
    const rl1lae::ExecutionOptions exec{static_cast<int>(state.range(1)), 64};
    for (auto _ : state) {
        auto r = rl1lae::run_monte_carlo(c, exec);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = static_cast<double>(state.range(1));
}
BENCHMARK(BM_MonteCarloOpenMP)
    ->ArgsProduct({{16, 64}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_FilterStep(benchmark::State& state) {
    const auto alg = static_cast<rl1lae::Algorithm>(state.range(0));
    const std::size_t taps = 80;
    const auto sig = rl1lae::synthesize_trial(rl1lae::ChannelSpec{taps, 8},
                                              rl1lae::GmmNoiseParams{0.2, 0.0, 0.0, 0.1, 40.0}, 4096, 1);
    auto st = rl1lae::FilterState::zeros(alg, {}, taps);
    std::vector<double> x(taps);
    std::size_t n = 0;
    for (auto _ : state) {
        rl1lae::fill_regressor(sig.input_sequence, n, x);
        auto rec = rl1lae::step(st, x, sig.observations[n]);
        benchmark::DoNotOptimize(rec);
        n = (n + 1) % sig.observations.size();
    }
    state.SetLabel(std::string(rl1lae::to_string(alg)));
}
BENCHMARK(BM_FilterStep)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
