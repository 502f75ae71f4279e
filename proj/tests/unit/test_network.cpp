#include <doctest.h>

#include "phasor/errors.hpp"
#include "phasor/network.hpp"
#include "support.hpp"

using namespace phasor;

TEST_CASE("populations receive consecutive neuron ids")
{
    Network net(10.0);
    Population a;
    a.name = "a";
    a.kind = NeuronKind::phasor_source;
    a.size = 3;
    a.phases = {0.0, 1.0, 2.0};
    Population b;
    b.name = "b";
    b.kind = NeuronKind::relay;
    b.size = 2;
    CHECK(net.add_population(a) == 0);
    CHECK(net.add_population(b) == 3);
    CHECK(net.neuron_count() == 5);
    CHECK(net.population_of(4).name == "b");
    CHECK_THROWS_AS(net.add_population(b), ValidationError);
    CHECK_THROWS_AS((void)net.population_of(5), ValidationError);
}

TEST_CASE("readout taps apply their rotation")
{
    Network net(1.0);
    Population a;
    a.name = "a";
    a.kind = NeuronKind::relay;
    a.size = 4;
    net.add_population(a);
    net.add_readout({"r", "a", 1});
    CHECK(net.readout_neurons(net.readout("r")) == std::vector<NeuronId>{1, 2, 3, 0});
}

TEST_CASE("validation enforces per-kind fan-in")
{
    auto sub = test::single_op(NeuronKind::phase_sub, {0.1, 0.2});
    CHECK_NOTHROW(sub.validate());

    Network bad(1.0);
    for (const auto &p : sub.populations()) {
        bad.add_population(p);
    }
    bad.connect({0, 2, 1.0, 0.0, Port::a});
    bad.connect({1, 2, 1.0, 0.0, Port::a});
    CHECK_THROWS_AS(bad.validate(), ValidationError);

    CHECK_THROWS_AS(test::single_op(NeuronKind::phase_sum, {0.1}).validate(), ValidationError);
    CHECK_THROWS_AS(test::single_op(NeuronKind::phase_avg, {0.1, 0.2, 0.3}).validate(), ValidationError);
    CHECK_THROWS_AS(test::single_op(NeuronKind::phase_mult, {0.1, 0.2}).validate(), ValidationError);
    CHECK_NOTHROW(test::single_op(NeuronKind::phase_mult, {0.1}).validate());
}

TEST_CASE("ports are only valid on phase-sub targets")
{
    auto net = test::single_op(NeuronKind::phase_sum, {0.1, 0.2});
    net.connect({0, 2, 1.0, 0.0, Port::a});
    CHECK_THROWS_AS(net.validate(), ValidationError);
}

TEST_CASE("negative or non-finite delays are rejected")
{
    auto net = test::single_op(NeuronKind::relay, {0.1});
    net.connect({0, 1, 1.0, -0.1, Port::unlabeled});
    CHECK_THROWS_AS(net.validate(), ValidationError);
}

TEST_CASE("network JSON round-trips")
{
    Network net(10.0);
    Population src;
    src.name = "src";
    src.kind = NeuronKind::phasor_source;
    src.size = 2;
    src.phases = {0.123456789012345, 6.0};
    net.add_population(src);
    Population rf;
    rf.name = "rf";
    rf.kind = NeuronKind::resonate_fire;
    rf.size = 1;
    rf.rf.decay_per_s = 2.31;
    rf.rf.threshold = 0.7;
    rf.rf.timing = SpikeTiming::fixed_phase;
    rf.rf.fire_phase_rad = 3.14159;
    net.add_population(rf);
    net.connect({0, 2, 1.0, 0.0123456789012345, Port::unlabeled});
    net.connect({1, 2, -0.5, 0.05, Port::unlabeled});
    net.add_readout({"out", "rf", 0});

    const Network back = network_from_json(network_to_json(net));
    CHECK(network_to_json(back) == network_to_json(net));
    CHECK(back.populations()[0].phases[0] == src.phases[0]);
    CHECK(back.connections()[0].delay_s == 0.0123456789012345);
    CHECK(back.populations()[1].rf.timing == SpikeTiming::fixed_phase);
    CHECK(back.readout("out").population == "rf");
    CHECK_THROWS_AS(network_from_json("[]"), ValidationError);
}

TEST_CASE("enum names round-trip")
{
    for (auto k : {NeuronKind::phasor_source, NeuronKind::phase_sum, NeuronKind::phase_sub,
                 NeuronKind::phase_mult, NeuronKind::phase_avg, NeuronKind::resonate_fire,
                 NeuronKind::relay}) {
        CHECK(neuron_kind_from_string(to_string(k)) == k);
    }
    CHECK(port_from_string("b") == Port::b);
    CHECK_THROWS_AS(neuron_kind_from_string("lif"), ValidationError);
}
