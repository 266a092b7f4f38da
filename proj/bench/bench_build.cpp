#include "ttw/opmatrix.hpp"

#include <benchmark/benchmark.h>

namespace {

const ttw::Realization& realization()
{
    static const ttw::Realization real(ttw::ModelParams{}, ttw::Truncation{});
    return real;
}

void BM_BuildParallel(benchmark::State& state)
{
    const auto& real = realization();
    const auto gen = static_cast<ttw::GeneratorId>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(real.build(gen));
    state.SetLabel(ttw::to_string(gen));
}

void BM_BuildSerial(benchmark::State& state)
{
    const auto& real = realization();
    const auto gen = static_cast<ttw::GeneratorId>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(real.build_serial(gen));
    state.SetLabel(ttw::to_string(gen));
}

void BM_Realization(benchmark::State& state)
{
    for (auto _ : state) {
        ttw::Realization real(ttw::ModelParams{}, ttw::Truncation{});
        benchmark::DoNotOptimize(real.dim());
    }
}

void generators(benchmark::internal::Benchmark* b)
{
    for (auto g : {ttw::GeneratorId::K0, ttw::GeneratorId::Vplus, ttw::GeneratorId::Yhat})
        b->Arg(static_cast<int>(g));
}

}  // namespace

BENCHMARK(BM_BuildParallel)->Apply(generators)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BuildSerial)->Apply(generators)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Realization)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
