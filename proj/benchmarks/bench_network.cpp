#include <benchmark/benchmark.h>

#include "phasor/compiler.hpp"
#include "phasor/engine.hpp"
#include "phasor/expr.hpp"
#include "phasor/readout.hpp"

using namespace phasor;

namespace {

// One stopwatch query: clean-up of rho(f / s / a, -1) over five states.
CompiledNetwork stopwatch_query(std::size_t n)
{
    auto symbols = Vocabulary::random(n, 1, {"C", "T", "P", "R", "S"});
    symbols.add("f", random_vector(n, 2));
    CompileOptions options;
    options.cleanup_vocabularies.emplace("", Vocabulary::random(n, 1, {"C", "T", "P", "R", "S"}));
    return compile(parse_expression("cleanup(rho(f / C / R, -1))"), symbols, options);
}

SimConfig sim(SimMode mode, int cycles)
{
    SimConfig c;
    c.base_frequency_hz = 10.0;
    c.dt_s = 1e-4;
    c.duration_cycles = cycles;
    c.mode = mode;
    return c;
}

} // namespace

static void BM_CompileStopwatch(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(stopwatch_query(static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_CompileStopwatch)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_RunStopwatch(benchmark::State &state)
{
    const auto cn = stopwatch_query(100);
    const auto mode = state.range(0) == 0 ? SimMode::event_driven : SimMode::fixed_step;
    state.SetLabel(std::string(to_string(mode)));
    std::size_t spikes = 0;
    for (auto _ : state) {
        const auto rec = run(cn.network, sim(mode, 16));
        spikes = rec.total_spikes();
        benchmark::DoNotOptimize(spikes);
    }
    state.counters["spikes"] = static_cast<double>(spikes);
}
BENCHMARK(BM_RunStopwatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_RunExpression(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto vocab = Vocabulary::random(n, 3, {"A", "B", "C", "X"});
    const auto cn = compile(parse_expression("rho(A * X^1.5, 2) / B + C"), vocab);
    for (auto _ : state) {
        const auto rec = run(cn.network, sim(SimMode::event_driven, 8));
        benchmark::DoNotOptimize(record_to_vector(rec, cn.network, cn.network.readout("out0"), 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunExpression)->Arg(64)->Arg(1024)->Unit(benchmark::kMillisecond);
