#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "phasor/compiler.hpp"
#include "phasor/neuron_models.hpp"
#include "support.hpp"

using namespace phasor;
using test::turns;

namespace {

constexpr double kEventTol = 1e-6;
constexpr double kStep = kTwoPi / 1000.0;

// Output phase of a single-op network in both modes; both must agree with
// `expected` (radians).
void check_op(NeuronKind kind, std::vector<double> inputs, double expected, double alpha = 1.0)
{
    const Network net = test::single_op(kind, inputs, alpha);
    const auto ev = test::output_phase(net, test::sim(SimMode::event_driven));
    const auto fx = test::output_phase(net, test::sim(SimMode::fixed_step));
    REQUIRE(ev.has_value());
    REQUIRE(fx.has_value());
    CHECK(phase_distance(*ev, expected) < kEventTol);
    CHECK(phase_distance(*fx, expected) < 2 * kStep);
}

} // namespace

TEST_CASE("phase-sum adds phases")
{
    check_op(NeuronKind::phase_sum, {turns(0.2), turns(0.3)}, turns(0.5));
    check_op(NeuronKind::phase_sum, {turns(0.7), turns(0.8)}, turns(0.5));
    check_op(NeuronKind::phase_sum, {0.0, 0.0}, 0.0);
}

TEST_CASE("phase-sub subtracts port b from port a")
{
    check_op(NeuronKind::phase_sub, {turns(0.6), turns(0.2)}, turns(0.4));
    check_op(NeuronKind::phase_sub, {turns(0.2), turns(0.6)}, turns(0.6));
    check_op(NeuronKind::phase_sub, {turns(0.45), turns(0.45)}, 0.0);
}

TEST_CASE("phase-mult scales the centered phase")
{
    check_op(NeuronKind::phase_mult, {turns(0.3)}, turns(0.3), 1.0);
    check_op(NeuronKind::phase_mult, {turns(0.3)}, 0.0, 0.0);
    const double phi = turns(0.9);
    check_op(NeuronKind::phase_mult, {phi}, wrap_phase(2.5 * center_phase(phi)), 2.5);
    check_op(NeuronKind::phase_mult, {turns(0.1)}, turns(0.25), 2.5);
    check_op(NeuronKind::phase_mult, {turns(0.4)}, wrap_phase(-1.7 * turns(0.4)), -1.7);
}

TEST_CASE("phase-avg fires at the circular midpoint")
{
    check_op(NeuronKind::phase_avg, {turns(0.2), turns(0.5)}, turns(0.35));
    check_op(NeuronKind::phase_avg, {turns(0.63), turns(0.63)}, turns(0.63));
    check_op(NeuronKind::phase_avg, {turns(0.9), turns(0.1)},
            test::complex_midpoint(turns(0.9), turns(0.1)));
    check_op(NeuronKind::phase_avg, {turns(0.9), turns(0.1)}, 0.0);
}

TEST_CASE("phase-avg flags antipodal inputs and stays silent")
{
    const Network net = test::single_op(NeuronKind::phase_avg, {turns(0.1), turns(0.6)});
    const SpikeRecord rec = run(net, test::sim(SimMode::event_driven));
    CHECK(rec.spike_cycles(2).empty());
    CHECK_FALSE(rec.anomalies().empty());
}

TEST_CASE("phase-avg output lies within a quarter cycle of both inputs")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng);
        const double b = u(rng);
        if (phase_distance(a, b) > std::numbers::pi - 1e-3) {
            continue;
        }
        const auto out = test::output_phase(test::single_op(NeuronKind::phase_avg, {a, b}),
                test::sim(SimMode::event_driven));
        REQUIRE(out.has_value());
        CHECK(phase_distance(*out, a) <= std::numbers::pi / 2 + 1e-9);
        CHECK(phase_distance(*out, b) <= std::numbers::pi / 2 + 1e-9);
    }
}

TEST_CASE("outputs reach steady state by cycle 3")
{
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (auto kind : {NeuronKind::phase_sum, NeuronKind::phase_sub, NeuronKind::phase_mult,
                 NeuronKind::phase_avg}) {
        for (int i = 0; i < 20; ++i) {
            std::vector<double> in{u(rng), u(rng)};
            if (kind == NeuronKind::phase_mult) {
                in.pop_back();
            }
            if (kind == NeuronKind::phase_avg && phase_distance(in[0], in[1]) > 3.0) {
                continue;
            }
            const Network net = test::single_op(kind, in, 1.8);
            for (auto mode : {SimMode::event_driven, SimMode::fixed_step}) {
                const SpikeRecord rec = run(net, test::sim(mode));
                const auto c3 = decode_phase(rec, 2 - (kind == NeuronKind::phase_mult), 3);
                for (int c : {4, 5}) {
                    const auto d = decode_phase(rec, 2 - (kind == NeuronKind::phase_mult), c);
                    REQUIRE(c3.has_value());
                    REQUIRE(d.has_value());
                    CHECK(phase_distance(c3->phase_rad, d->phase_rad) < kStep);
                    CHECK(d->spikes_in_cycle == 1);
                }
            }
        }
    }
}

TEST_CASE("phase-sum flags a third spike inside one computation")
{
    PhaseSum m;
    CHECK_FALSE(m.receive(0.1, {}).anomaly);
    m.integrate(0.1);
    CHECK_FALSE(m.receive(0.2, {}).anomaly);
    m.integrate(0.02);
    m.receive(0.22, {});
    m.integrate(0.02);
    CHECK(m.receive(0.24, {}).anomaly != nullptr);
}

TEST_CASE("phase-sub ignores port a until port b has spiked")
{
    PhaseSub m;
    CHECK_FALSE(m.receive(0.3, {1.0, Port::a, 0}).fire);
    CHECK(m.next_event(0.3) == kNever);
    m.receive(0.4, {1.0, Port::b, 0});
    m.integrate(0.2);
    m.receive(0.6, {1.0, Port::a, 0});
    CHECK(m.next_event(0.6) == doctest::Approx(1.2));
}

TEST_CASE("next_clock_time finds the next matching phase")
{
    CHECK(next_clock_time(0.1, 0.25, false) == doctest::Approx(0.25));
    CHECK(next_clock_time(0.25, 0.25, false) == doctest::Approx(0.25));
    CHECK(next_clock_time(0.25, 0.25, true) == doctest::Approx(1.25));
    CHECK(next_clock_time(2.9, 0.1, false) == doctest::Approx(3.1));
}

namespace {

Network rf_network(const std::vector<double> &phases, const std::vector<double> &weights,
        double threshold = 0.5)
{
    Network net(1.0);
    Population src;
    src.name = "in";
    src.kind = NeuronKind::phasor_source;
    src.size = phases.size();
    src.phases = phases;
    net.add_population(src);
    Population rf;
    rf.name = "rf";
    rf.kind = NeuronKind::resonate_fire;
    rf.size = 1;
    rf.rf.threshold = threshold;
    rf.rf.saturation = 10 * threshold;
    rf.rf.decay_per_s = std::numbers::ln2 / 3.0;
    const NeuronId o = net.add_population(rf);
    for (std::size_t i = 0; i < phases.size(); ++i) {
        net.connect({static_cast<NeuronId>(i), o, weights[i], 0.0, Port::unlabeled});
    }
    return net;
}

} // namespace

TEST_CASE("resonate-and-fire spikes at the phase of a single strong input")
{
    const Network net = rf_network({turns(0.3)}, {1.0});
    const SpikeRecord rec = run(net, test::sim(SimMode::event_driven));
    for (int c = 1; c < 8; ++c) {
        const auto d = decode_phase(rec, 1, c);
        REQUIRE(d.has_value());
        CHECK(phase_distance(d->phase_rad, turns(0.3)) < kEventTol);
        CHECK(d->spikes_in_cycle == 1);
    }
}

TEST_CASE("resonate-and-fire superposes in-phase inputs")
{
    const int m = 4;
    const Network net = rf_network(std::vector<double>(m, turns(0.7)), std::vector<double>(m, 1.0 / m));
    const auto out = test::output_phase(net, test::sim(SimMode::event_driven));
    REQUIRE(out.has_value());
    CHECK(phase_distance(*out, turns(0.7)) < kEventTol);
}

TEST_CASE("resonate-and-fire stays silent under cancelling inputs")
{
    // Each kick alone is below threshold, their magnitudes sum above it.
    const Network net = rf_network({turns(0.2), turns(0.7)}, {0.4, 0.4});
    const SpikeRecord rec = run(net, test::sim(SimMode::event_driven));
    CHECK(rec.spike_cycles(2).empty());
}

TEST_CASE("resonate-and-fire emits at most one spike per cycle")
{
    const Network net = rf_network({turns(0.1), turns(0.15), turns(0.2)}, {3.0, 3.0, 3.0});
    const SpikeRecord rec = run(net, test::sim(SimMode::event_driven, 1.0, 12));
    CHECK(rec.anomalies().empty());
    for (int c = 0; c < 12; ++c) {
        const auto d = decode_phase(rec, 3, c);
        if (d) {
            CHECK(d->spikes_in_cycle == 1);
        }
    }
}

TEST_CASE("winner-take-all: only the most driven H neuron keeps spiking")
{
    // 5-entry vocabulary, G clamped to a noisy copy of one entry; H wired as
    // in the clean-up assembly without feedback.
    const std::size_t n = 100;
    const CleanupParams p;
    int trials = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto vocab = Vocabulary::random(n, 3000 + seed, {"A", "B", "C", "D", "E"});
        const std::size_t target = seed % 5;
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> noise(-0.3, 0.3);
        std::vector<double> g(n);
        for (std::size_t k = 0; k < n; ++k) {
            g[k] = vocab[target].vector[k] + noise(rng);
        }
        const PhasorVector gv(g);
        std::vector<double> drive;
        for (const auto &e : vocab.entries()) {
            drive.push_back(std::abs(similarity(gv, e.vector)));
        }
        bool dominant = true;
        for (std::size_t m = 0; m < 5; ++m) {
            dominant = dominant && (m == target || drive[target] >= 1.2 * drive[m]);
        }
        if (!dominant) {
            continue;
        }
        ++trials;

        Network net(1.0);
        const NeuronId gid = encode_population(net, gv, "G");
        Population h;
        h.name = "H";
        h.kind = NeuronKind::resonate_fire;
        h.size = 5;
        h.rf.threshold = p.threshold_factor * n;
        h.rf.saturation = p.saturation_factor * h.rf.threshold;
        h.rf.decay_per_s = p.decay_per_cycle;
        h.rf.timing = SpikeTiming::fixed_phase;
        h.rf.fire_phase_rad = p.h_fire_phase_rad;
        const NeuronId hid = net.add_population(h);
        for (std::size_t m = 0; m < 5; ++m) {
            const auto codes = phases_to_delays(vocab[m].vector, 1.0, true);
            for (std::size_t k = 0; k < n; ++k) {
                net.connect({gid + static_cast<NeuronId>(k), hid + static_cast<NeuronId>(m),
                        codes[k].weight, codes[k].delay_s, Port::unlabeled});
            }
            for (std::size_t j = 0; j < 5; ++j) {
                if (j != m) {
                    net.connect({hid + static_cast<NeuronId>(j), hid + static_cast<NeuronId>(m),
                            -p.inhibition_factor * h.rf.threshold, 0.0, Port::unlabeled});
                }
            }
        }
        const SpikeRecord rec = run(net, test::sim(SimMode::event_driven, 1.0, 8));
        for (int c = 4; c < 8; ++c) {
            for (std::size_t m = 0; m < 5; ++m) {
                const bool spiked = decode_phase(rec, hid + static_cast<NeuronId>(m), c).has_value();
                CHECK(spiked == (m == target));
            }
        }
    }
    CHECK(trials >= 90);
}
