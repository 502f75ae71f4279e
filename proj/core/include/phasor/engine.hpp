#pragma once

// Deterministic simulation kernel. Spikes travel along connections with
// their synaptic delay; neuron models are advanced either in fixed steps
// of dt with in-step crossing detection, or directly from event to event.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasor/network.hpp"

namespace phasor {

enum class SimMode
{
    fixed_step,
    event_driven,
};

std::string_view to_string(SimMode mode);
SimMode sim_mode_from_string(std::string_view name);

struct SimConfig
{
    double base_frequency_hz = 10.0;
    double dt_s = 1e-4;
    int duration_cycles = 8;
    SimMode mode = SimMode::event_driven;
    std::uint64_t seed = 1;

    double period_s() const { return 1.0 / base_frequency_hz; }
    double duration_s() const { return duration_cycles * period_s(); }
    /// dt/T, the phase resolution of the fixed-step mode in cycles.
    double step_cycles() const { return dt_s * base_frequency_hz; }

    /// Throws ValidationError unless dt divides T to within 1 part in 1e9,
    /// the frequency is positive and the duration is at least one cycle.
    void validate() const;
};

/// Parses `key = value` lines (base_frequency_hz, dt_s, duration_cycles,
/// mode, seed). Blank lines and `#` comments are ignored; keys not present
/// keep their defaults.
SimConfig parse_sim_config(std::istream &in, SimConfig base = {});
SimConfig load_sim_config(const std::filesystem::path &path, SimConfig base = {});

struct SpikeEvent
{
    NeuronId neuron = 0;
    double time_s = 0.0;
};

struct Anomaly
{
    NeuronId neuron = 0;
    double time_s = 0.0;
    std::string message;

    bool operator==(const Anomaly &) const = default;
};

/// All spikes of a run, grouped by neuron. Times are kept in cycles so
/// that phases decode without a round trip through seconds.
class SpikeRecord
{
public:
    SpikeRecord() = default;
    SpikeRecord(std::size_t neurons, double period_s, int cycles)
        : period_s_(period_s), cycles_(cycles), spikes_(neurons)
    {
    }

    std::size_t neuron_count() const { return spikes_.size(); }
    double period_s() const { return period_s_; }
    int cycles() const { return cycles_; }

    const std::vector<double> &spike_cycles(NeuronId n) const { return spikes_.at(n); }
    std::vector<double> spike_times_s(NeuronId n) const;
    std::size_t total_spikes() const;

    /// Every spike in (time, neuron) order.
    std::vector<SpikeEvent> events() const;

    const std::vector<Anomaly> &anomalies() const { return anomalies_; }

    void add_spike(NeuronId n, double t_cycles) { spikes_[n].push_back(t_cycles); }
    void add_anomaly(Anomaly a) { anomalies_.push_back(std::move(a)); }

    bool operator==(const SpikeRecord &) const = default;

private:
    double period_s_ = 1.0;
    int cycles_ = 0;
    std::vector<std::vector<double>> spikes_;
    std::vector<Anomaly> anomalies_;
};

/// Runs the network for config.duration_cycles cycles. The network's base
/// frequency must equal the config's. Throws SimulationError on a
/// non-finite neuron state.
SpikeRecord run(const Network &net, const SimConfig &config);

/// Spikes within this many cycles before a cycle boundary belong to the
/// new cycle, at phase 0.
inline constexpr double kBoundarySnap = 1e-9;

struct DecodedPhase
{
    double phase_rad = 0.0;
    int spikes_in_cycle = 0; // > 1 flags a one-spike-per-cycle violation
};

/// Phase of the neuron's first spike in global cycle `cycle`.
std::optional<DecodedPhase> decode_phase(const SpikeRecord &record, NeuronId neuron, int cycle);

/// CSV `neuron_id,population,time_s,cycle,phase_rad`, one row per spike.
void write_spike_csv(std::ostream &out, const SpikeRecord &record, const Network &net);

} // namespace phasor
