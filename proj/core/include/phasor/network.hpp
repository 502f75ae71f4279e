#pragma once

// Executable spiking network: typed populations, weighted delayed
// connections and named readout taps. This is also the document the
// compiler emits and the CLI serializes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phasor {

using NeuronId = std::uint32_t;

enum class NeuronKind
{
    phasor_source,
    phase_sum,
    phase_sub,
    phase_mult,
    phase_avg,
    resonate_fire,
    relay,
};

std::string_view to_string(NeuronKind kind);
NeuronKind neuron_kind_from_string(std::string_view name);

/// Distinguishes the two inputs of a phase-subtraction neuron: the result
/// is phase(a) − phase(b).
enum class Port : std::uint8_t
{
    unlabeled,
    a,
    b,
};

std::string_view to_string(Port port);
Port port_from_string(std::string_view name);

/// Where in the cycle a resonate-and-fire neuron emits its spike.
enum class SpikeTiming : std::uint8_t
{
    oscillator_peak, // at the phase of the accumulated input
    fixed_phase,     // at a fixed phase of the global cycle
};

struct ResonateFireParams
{
    double decay_per_s = 0.0;
    double threshold = 0.5;
    double saturation = 5.0;
    SpikeTiming timing = SpikeTiming::oscillator_peak;
    double fire_phase_rad = 0.0;      // used with SpikeTiming::fixed_phase
    double refractory_cycles = 0.9;
};

struct Population
{
    std::string name;
    NeuronKind kind = NeuronKind::relay;
    std::size_t size = 0;
    std::vector<double> phases;        // phasor_source only, one per neuron
    double alpha = 1.0;                // phase_mult only
    ResonateFireParams rf;             // resonate_fire only
    NeuronId first = 0;                // assigned by Network::add_population
};

struct Connection
{
    NeuronId source = 0;
    NeuronId target = 0;
    double weight = 1.0;
    double delay_s = 0.0;
    Port port = Port::unlabeled;
};

/// Component k of a readout is neuron population[(k + shift) mod size].
struct Readout
{
    std::string label;
    std::string population;
    long shift = 0;
};

class Network
{
public:
    Network() = default;
    explicit Network(double base_frequency_hz) : base_frequency_hz_(base_frequency_hz) {}

    double base_frequency_hz() const { return base_frequency_hz_; }
    double period_s() const { return 1.0 / base_frequency_hz_; }

    /// Appends a population and returns its first neuron id.
    NeuronId add_population(Population pop);
    void connect(Connection c) { connections_.push_back(c); }
    void add_readout(Readout r) { readouts_.push_back(std::move(r)); }

    const std::vector<Population> &populations() const { return populations_; }
    const std::vector<Connection> &connections() const { return connections_; }
    const std::vector<Readout> &readouts() const { return readouts_; }

    const Population *find_population(std::string_view name) const;
    const Population &population(std::string_view name) const;
    const Population &population_of(NeuronId id) const;
    const Readout &readout(std::string_view label) const;

    std::size_t neuron_count() const;

    /// Neuron ids of a readout tap, in component order.
    std::vector<NeuronId> readout_neurons(const Readout &r) const;

    /// Structural checks: endpoints exist, delays finite and non-negative,
    /// per-kind fan-in rules, source phases sized. Throws ValidationError.
    void validate() const;

private:
    double base_frequency_hz_ = 10.0;
    std::vector<Population> populations_;
    std::vector<Connection> connections_;
    std::vector<Readout> readouts_;
};

std::string network_to_json(const Network &net);
Network network_from_json(std::string_view text);

} // namespace phasor
