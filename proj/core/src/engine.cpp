#include "phasor/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <tuple>

#include "phasor/errors.hpp"
#include "phasor/neuron_models.hpp"
#include "phasor/phase.hpp"

namespace phasor {

std::string_view to_string(SimMode mode)
{
    return mode == SimMode::fixed_step ? "fixed" : "event";
}

SimMode sim_mode_from_string(std::string_view name)
{
    if (name == "fixed" || name == "fixed_step") {
        return SimMode::fixed_step;
    }
    if (name == "event" || name == "event_driven") {
        return SimMode::event_driven;
    }
    throw ValidationError("unknown simulation mode '" + std::string(name) + "'");
}

void SimConfig::validate() const
{
    if (!(base_frequency_hz > 0.0) || !std::isfinite(base_frequency_hz)) {
        throw ValidationError("base_frequency_hz must be positive");
    }
    if (duration_cycles < 1) {
        throw ValidationError("duration_cycles must be at least 1");
    }
    if (!(dt_s > 0.0) || !std::isfinite(dt_s)) {
        throw ValidationError("dt_s must be positive");
    }
    const double steps = 1.0 / step_cycles();
    if (steps < 1.0 || std::abs(steps - std::round(steps)) > 1e-9 * steps) {
        throw ValidationError("dt_s must divide the period");
    }
}

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string &key, const std::string &value)
{
    T out{};
    if constexpr (std::is_floating_point_v<T>) {
        std::size_t used = 0;
        try {
            out = std::stod(value, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != value.size() || value.empty()) {
            throw ValidationError("config key '" + key + "': not a number: '" + value + "'");
        }
    } else {
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
            throw ValidationError("config key '" + key + "': not an integer: '" + value + "'");
        }
    }
    return out;
}

} // namespace

SimConfig parse_sim_config(std::istream &in, SimConfig config)
{
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string content = trim(line);
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key == "base_frequency_hz") {
            config.base_frequency_hz = parse_number<double>(key, value);
        } else if (key == "dt_s") {
            config.dt_s = parse_number<double>(key, value);
        } else if (key == "duration_cycles") {
            config.duration_cycles = parse_number<int>(key, value);
        } else if (key == "mode") {
            config.mode = sim_mode_from_string(value);
        } else if (key == "seed") {
            config.seed = parse_number<std::uint64_t>(key, value);
        } else {
            throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" +
                    key + "'");
        }
    }
    return config;
}

SimConfig load_sim_config(const std::filesystem::path &path, SimConfig base)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config file " + path.string());
    }
    return parse_sim_config(in, base);
}

std::vector<double> SpikeRecord::spike_times_s(NeuronId n) const
{
    std::vector<double> out;
    out.reserve(spikes_.at(n).size());
    for (double t : spikes_[n]) {
        out.push_back(t * period_s_);
    }
    return out;
}

std::size_t SpikeRecord::total_spikes() const
{
    std::size_t total = 0;
    for (const auto &s : spikes_) {
        total += s.size();
    }
    return total;
}

std::vector<SpikeEvent> SpikeRecord::events() const
{
    std::vector<std::pair<double, NeuronId>> all;
    for (NeuronId n = 0; n < spikes_.size(); ++n) {
        for (double t : spikes_[n]) {
            all.emplace_back(t, n);
        }
    }
    std::sort(all.begin(), all.end());
    std::vector<SpikeEvent> out;
    out.reserve(all.size());
    for (const auto &[t, n] : all) {
        out.push_back({n, t * period_s_});
    }
    return out;
}

namespace {

struct Delivery
{
    double time;
    NeuronId source;
    NeuronId target;
    std::uint32_t connection;

    auto key() const { return std::tie(time, source, target, connection); }
    bool operator>(const Delivery &o) const { return key() > o.key(); }
};

struct Scheduled
{
    double time;
    NeuronId neuron;
    std::uint64_t version;

    bool operator>(const Scheduled &o) const
    {
        return std::tie(time, neuron) > std::tie(o.time, o.neuron);
    }
};

template <typename T>
using MinHeap = std::priority_queue<T, std::vector<T>, std::greater<T>>;

struct Route
{
    NeuronId target;
    double delay; // cycles
    std::uint32_t connection;
};

class Simulator
{
public:
    Simulator(const Network &net, const SimConfig &config)
        : net_(net),
          end_(config.duration_cycles),
          record_(net.neuron_count(), config.period_s(), config.duration_cycles)
    {
        const std::size_t n = net.neuron_count();
        models_.reserve(n);
        for (const auto &pop : net.populations()) {
            for (std::size_t i = 0; i < pop.size; ++i) {
                models_.push_back(make_model(pop, i, net.base_frequency_hz()));
            }
        }
        state_time_.assign(n, 0.0);
        version_.assign(n, 0);
        last_spike_cycle_.assign(n, -1);

        const auto &conns = net.connections();
        inputs_.resize(conns.size());
        routes_.resize(n);
        std::vector<int> inbound(n, 0);
        for (std::uint32_t c = 0; c < conns.size(); ++c) {
            const auto &conn = conns[c];
            inputs_[c] = Input{conn.weight, conn.port, inbound[conn.target]++};
            double delay = cycle_fraction(conn.delay_s * net.base_frequency_hz());
            routes_[conn.source].push_back({conn.target, delay, c});
        }
    }

    SpikeRecord run_event_driven()
    {
        horizon_ = end_;
        for (NeuronId n = 0; n < models_.size(); ++n) {
            reschedule(n, 0.0);
        }
        drain(end_);
        return std::move(record_);
    }

    SpikeRecord run_fixed_step(double step_cycles)
    {
        const auto steps_per_cycle = static_cast<long>(std::llround(1.0 / step_cycles));
        const long steps = steps_per_cycle * static_cast<long>(end_);
        for (long k = 0; k < steps; ++k) {
            // Step boundaries are computed from the step index so that every
            // cycle boundary falls exactly on a step start.
            const double t0 = static_cast<double>(k) / static_cast<double>(steps_per_cycle);
            const double t1 = static_cast<double>(k + 1) / static_cast<double>(steps_per_cycle);
            horizon_ = t1;
            for (NeuronId n = 0; n < models_.size(); ++n) {
                reschedule(n, t0);
            }
            drain(t1);
            for (NeuronId n = 0; n < models_.size(); ++n) {
                advance(n, t1);
            }
        }
        return std::move(record_);
    }

private:
    void advance(NeuronId n, double t)
    {
        const double dt = t - state_time_[n];
        if (dt > 0.0) {
            std::visit([dt](auto &m) { m.integrate(dt); }, models_[n]);
            state_time_[n] = t;
        }
        const bool ok = std::visit([](const auto &m) { return m.finite(); }, models_[n]);
        if (!ok) {
            throw SimulationError("non-finite neuron state", n, t * record_.period_s());
        }
    }

    void reschedule(NeuronId n, double t)
    {
        ++version_[n];
        const double next = std::visit([t](const auto &m) { return m.next_event(t); }, models_[n]);
        if (next < horizon_) {
            internal_.push({std::max(next, t), n, version_[n]});
        }
    }

    void emit(NeuronId n, double t)
    {
        std::visit([t](auto &m) { m.fire(t); }, models_[n]);
        record_.add_spike(n, t);
        const int cycle = static_cast<int>(std::floor(t + kBoundarySnap));
        if (cycle == last_spike_cycle_[n]) {
            flag(n, t, "more than one spike in cycle " + std::to_string(cycle));
        }
        last_spike_cycle_[n] = cycle;
        for (const auto &r : routes_[n]) {
            const double when = t + r.delay;
            if (when < end_) {
                deliveries_.push({when, n, r.target, r.connection});
            }
        }
    }

    void flag(NeuronId n, double t, std::string message)
    {
        record_.add_anomaly({n, t * record_.period_s(), std::move(message)});
    }

    // Processes every event before `limit`. At equal times, threshold
    // events go first (ascending neuron id), then deliveries in
    // (time, source, target, connection) order.
    void drain(double limit)
    {
        while (true) {
            while (!internal_.empty() && internal_.top().version != version_[internal_.top().neuron]) {
                internal_.pop();
            }
            const bool have_internal = !internal_.empty() && internal_.top().time < limit;
            const bool have_delivery = !deliveries_.empty() && deliveries_.top().time < limit;
            if (!have_internal && !have_delivery) {
                break;
            }
            if (have_internal &&
                    (!have_delivery || internal_.top().time <= deliveries_.top().time)) {
                const auto ev = internal_.top();
                internal_.pop();
                advance(ev.neuron, ev.time);
                emit(ev.neuron, ev.time);
                reschedule(ev.neuron, ev.time);
            } else {
                const auto d = deliveries_.top();
                deliveries_.pop();
                advance(d.target, d.time);
                const auto outcome = std::visit(
                        [&](auto &m) { return m.receive(d.time, inputs_[d.connection]); },
                        models_[d.target]);
                if (outcome.anomaly != nullptr) {
                    flag(d.target, d.time, outcome.anomaly);
                }
                if (outcome.fire) {
                    emit(d.target, d.time);
                }
                advance(d.target, d.time);
                reschedule(d.target, d.time);
            }
        }
        // Leftover internal events lie beyond the limit; in fixed-step mode
        // they are recomputed from the stepped state at the next step.
        if (limit < end_) {
            internal_ = {};
        }
    }

    const Network &net_;
    double end_;
    double horizon_ = 0.0;
    SpikeRecord record_;
    std::vector<NeuronModel> models_;
    std::vector<double> state_time_;
    std::vector<std::uint64_t> version_;
    std::vector<int> last_spike_cycle_;
    std::vector<Input> inputs_;
    std::vector<std::vector<Route>> routes_;
    MinHeap<Scheduled> internal_;
    MinHeap<Delivery> deliveries_;
};

} // namespace

SpikeRecord run(const Network &net, const SimConfig &config)
{
    config.validate();
    if (std::abs(net.base_frequency_hz() - config.base_frequency_hz) >
            1e-12 * config.base_frequency_hz) {
        throw ValidationError("network base frequency differs from the simulation config");
    }
    net.validate();
    Simulator sim(net, config);
    if (config.mode == SimMode::event_driven) {
        return sim.run_event_driven();
    }
    return sim.run_fixed_step(config.step_cycles());
}

std::optional<DecodedPhase> decode_phase(const SpikeRecord &record, NeuronId neuron, int cycle)
{
    std::optional<DecodedPhase> out;
    for (double t : record.spike_cycles(neuron)) {
        const double snapped = t + kBoundarySnap;
        if (static_cast<int>(std::floor(snapped)) != cycle) {
            continue;
        }
        if (!out) {
            const double offset = std::max(0.0, t - cycle);
            out = DecodedPhase{wrap_phase(kTwoPi * offset), 0};
        }
        ++out->spikes_in_cycle;
    }
    return out;
}

void write_spike_csv(std::ostream &out, const SpikeRecord &record, const Network &net)
{
    out << "neuron_id,population,time_s,cycle,phase_rad\n";
    std::ostringstream row;
    row << std::setprecision(15);
    for (NeuronId n = 0; n < record.neuron_count(); ++n) {
        const auto &name = net.population_of(n).name;
        for (double t : record.spike_cycles(n)) {
            const int cycle = static_cast<int>(std::floor(t + kBoundarySnap));
            const double phase = wrap_phase(kTwoPi * std::max(0.0, t - cycle));
            row.str({});
            row << n << ',' << name << ',' << t * record.period_s() << ',' << cycle << ','
                << phase << '\n';
            out << row.str();
        }
    }
}

} // namespace phasor
