#pragma once
// Helpers shared by the unit tests.

#include <complex>
#include <optional>
#include <vector>

#include "phasor/engine.hpp"
#include "phasor/network.hpp"
#include "phasor/phase.hpp"

namespace phasor::test {

inline double turns(double cycles) { return cycles * kTwoPi; }

/// Independent two-phasor oracle: arg(e^{ia} + e^{ib}).
inline double complex_midpoint(double a, double b)
{
    return wrap_phase(std::arg(std::polar(1.0, a) + std::polar(1.0, b)));
}

/// Sources at `phases` (radians) feeding one neuron of `kind`. The first
/// source drives port `a` of a phase-sub neuron, the second port `b`.
inline Network single_op(NeuronKind kind, const std::vector<double> &phases, double alpha = 1.0,
        double hz = 1.0)
{
    Network net(hz);
    Population src;
    src.name = "in";
    src.kind = NeuronKind::phasor_source;
    src.size = phases.size();
    src.phases = phases;
    const NeuronId s = net.add_population(src);
    Population op;
    op.name = "op";
    op.kind = kind;
    op.size = 1;
    op.alpha = alpha;
    const NeuronId o = net.add_population(op);
    for (std::size_t i = 0; i < phases.size(); ++i) {
        Connection c;
        c.source = s + static_cast<NeuronId>(i);
        c.target = o;
        if (kind == NeuronKind::phase_sub) {
            c.port = i == 0 ? Port::a : Port::b;
        }
        net.connect(c);
    }
    return net;
}

inline SimConfig sim(SimMode mode, double hz = 1.0, int cycles = 8, int steps_per_cycle = 1000)
{
    SimConfig c;
    c.base_frequency_hz = hz;
    c.dt_s = 1.0 / (hz * steps_per_cycle);
    c.duration_cycles = cycles;
    c.mode = mode;
    return c;
}

/// Decoded phase of the last population's first neuron in `cycle`.
inline std::optional<double> output_phase(const Network &net, const SimConfig &config, int cycle = 5)
{
    const SpikeRecord rec = run(net, config);
    const auto d = decode_phase(rec, net.populations().back().first, cycle);
    if (!d) {
        return std::nullopt;
    }
    return d->phase_rad;
}

} // namespace phasor::test
