#include <benchmark/benchmark.h>

#include "phasor/fhrr.hpp"
#include "phasor/readout.hpp"
#include "phasor/vocabulary.hpp"

using namespace phasor;

static void BM_Bind(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto u = random_vector(n, 1);
    const auto v = random_vector(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bind(u, v));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Bind)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_Bundle(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto u = random_vector(n, 1);
    const auto v = random_vector(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bundle({u, v}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Bundle)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_FractionalPower(benchmark::State &state)
{
    const auto v = random_vector(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fractional_power(v, 1.85));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FractionalPower)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_Similarity(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto u = random_vector(n, 4);
    const auto v = random_vector(n, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(similarity(u, v));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Similarity)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_CleanupOracle(benchmark::State &state)
{
    const auto vocab = Vocabulary::random(100, 6, {"C", "T", "P", "R", "S"});
    const auto q = random_vector(100, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cleanup_oracle(q, vocab));
    }
}
BENCHMARK(BM_CleanupOracle);

static void BM_SspSweep(benchmark::State &state)
{
    const auto axis = random_vector(200, 8);
    const auto q = fractional_power(axis, 1.85);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssp_sweep(q, axis));
    }
}
BENCHMARK(BM_SspSweep);
