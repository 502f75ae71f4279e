#include "phasor/network.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include <nlohmann/json.hpp>

#include "phasor/errors.hpp"

namespace phasor {

namespace {

constexpr std::array<std::pair<NeuronKind, std::string_view>, 7> kKindNames{{
        {NeuronKind::phasor_source, "phasor_source"},
        {NeuronKind::phase_sum, "phase_sum"},
        {NeuronKind::phase_sub, "phase_sub"},
        {NeuronKind::phase_mult, "phase_mult"},
        {NeuronKind::phase_avg, "phase_avg"},
        {NeuronKind::resonate_fire, "resonate_fire"},
        {NeuronKind::relay, "relay"},
}};

std::string_view timing_name(SpikeTiming t)
{
    return t == SpikeTiming::fixed_phase ? "fixed_phase" : "oscillator_peak";
}

SpikeTiming timing_from_string(std::string_view s)
{
    if (s == "fixed_phase") {
        return SpikeTiming::fixed_phase;
    }
    if (s == "oscillator_peak") {
        return SpikeTiming::oscillator_peak;
    }
    throw ValidationError("unknown spike timing '" + std::string(s) + "'");
}

} // namespace

std::string_view to_string(NeuronKind kind)
{
    for (const auto &[k, name] : kKindNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

NeuronKind neuron_kind_from_string(std::string_view name)
{
    for (const auto &[k, n] : kKindNames) {
        if (n == name) {
            return k;
        }
    }
    throw ValidationError("unknown neuron kind '" + std::string(name) + "'");
}

std::string_view to_string(Port port)
{
    switch (port) {
    case Port::a:
        return "a";
    case Port::b:
        return "b";
    default:
        return "";
    }
}

Port port_from_string(std::string_view name)
{
    if (name == "a") {
        return Port::a;
    }
    if (name == "b") {
        return Port::b;
    }
    if (name.empty()) {
        return Port::unlabeled;
    }
    throw ValidationError("unknown port '" + std::string(name) + "'");
}

NeuronId Network::add_population(Population pop)
{
    if (find_population(pop.name) != nullptr) {
        throw ValidationError("duplicate population '" + pop.name + "'");
    }
    pop.first = static_cast<NeuronId>(neuron_count());
    populations_.push_back(std::move(pop));
    return populations_.back().first;
}

const Population *Network::find_population(std::string_view name) const
{
    for (const auto &p : populations_) {
        if (p.name == name) {
            return &p;
        }
    }
    return nullptr;
}

const Population &Network::population(std::string_view name) const
{
    if (const auto *p = find_population(name)) {
        return *p;
    }
    throw ValidationError("unknown population '" + std::string(name) + "'");
}

const Population &Network::population_of(NeuronId id) const
{
    // Populations are contiguous and sorted by first id.
    auto it = std::upper_bound(populations_.begin(), populations_.end(), id,
            [](NeuronId v, const Population &p) { return v < p.first; });
    if (it == populations_.begin()) {
        throw ValidationError("neuron id " + std::to_string(id) + " out of range");
    }
    --it;
    if (id >= it->first + it->size) {
        throw ValidationError("neuron id " + std::to_string(id) + " out of range");
    }
    return *it;
}

const Readout &Network::readout(std::string_view label) const
{
    for (const auto &r : readouts_) {
        if (r.label == label) {
            return r;
        }
    }
    throw ValidationError("unknown readout '" + std::string(label) + "'");
}

std::size_t Network::neuron_count() const
{
    std::size_t n = 0;
    for (const auto &p : populations_) {
        n += p.size;
    }
    return n;
}

std::vector<NeuronId> Network::readout_neurons(const Readout &r) const
{
    const auto &pop = population(r.population);
    const auto n = static_cast<long>(pop.size);
    std::vector<NeuronId> ids(pop.size);
    for (long k = 0; k < n; ++k) {
        long src = (k + r.shift) % n;
        if (src < 0) {
            src += n;
        }
        ids[static_cast<std::size_t>(k)] = pop.first + static_cast<NeuronId>(src);
    }
    return ids;
}

void Network::validate() const
{
    if (!(base_frequency_hz_ > 0.0) || !std::isfinite(base_frequency_hz_)) {
        throw ValidationError("base frequency must be positive");
    }
    const std::size_t total = neuron_count();
    for (const auto &p : populations_) {
        if (p.kind == NeuronKind::phasor_source && p.phases.size() != p.size) {
            throw ValidationError("source population '" + p.name + "' needs one phase per neuron");
        }
        if (p.kind == NeuronKind::phase_mult && !std::isfinite(p.alpha)) {
            throw ValidationError("phase_mult population '" + p.name + "' has non-finite alpha");
        }
        if (p.kind == NeuronKind::resonate_fire) {
            const auto &rf = p.rf;
            if (!(rf.threshold > 0.0) || !(rf.saturation >= rf.threshold) || rf.decay_per_s < 0.0 ||
                    rf.refractory_cycles < 0.0 || rf.refractory_cycles >= 1.0) {
                throw ValidationError("invalid resonate-and-fire parameters in '" + p.name + "'");
            }
        }
    }

    struct FanIn
    {
        int total = 0;
        int a = 0;
        int b = 0;
    };
    std::vector<FanIn> fan_in(total);
    for (const auto &c : connections_) {
        if (c.source >= total || c.target >= total) {
            throw ValidationError("connection endpoint out of range");
        }
        if (!std::isfinite(c.delay_s) || c.delay_s < 0.0 || !std::isfinite(c.weight)) {
            throw ValidationError("connection " + std::to_string(c.source) + "->" +
                    std::to_string(c.target) + " has an invalid delay or weight");
        }
        auto &f = fan_in[c.target];
        ++f.total;
        f.a += c.port == Port::a;
        f.b += c.port == Port::b;
    }

    for (const auto &p : populations_) {
        for (std::size_t i = 0; i < p.size; ++i) {
            const auto id = p.first + static_cast<NeuronId>(i);
            const auto &f = fan_in[id];
            const std::string where = "neuron " + std::to_string(id) + " of '" + p.name + "'";
            if (p.kind != NeuronKind::phase_sub && (f.a != 0 || f.b != 0)) {
                throw ValidationError(where + ": ports a/b are only valid on phase_sub targets");
            }
            switch (p.kind) {
            case NeuronKind::phasor_source:
                if (f.total != 0) {
                    throw ValidationError(where + ": sources take no input");
                }
                break;
            case NeuronKind::phase_sum:
            case NeuronKind::phase_avg:
                if (f.total != 2) {
                    throw ValidationError(where + ": needs exactly two inputs");
                }
                break;
            case NeuronKind::phase_sub:
                if (f.total != 2 || f.a != 1 || f.b != 1) {
                    throw ValidationError(where + ": needs exactly one 'a' and one 'b' input");
                }
                break;
            case NeuronKind::phase_mult:
                if (f.total != 1) {
                    throw ValidationError(where + ": needs exactly one input");
                }
                break;
            case NeuronKind::resonate_fire:
            case NeuronKind::relay:
                break;
            }
        }
    }

    for (const auto &r : readouts_) {
        if (find_population(r.population) == nullptr) {
            throw ValidationError("readout '" + r.label + "' names unknown population '" +
                    r.population + "'");
        }
    }
}

std::string network_to_json(const Network &net)
{
    using nlohmann::json;
    json doc;
    doc["base_frequency_hz"] = net.base_frequency_hz();
    doc["populations"] = json::array();
    for (const auto &p : net.populations()) {
        json jp{{"name", p.name}, {"kind", to_string(p.kind)}, {"size", p.size},
                {"first", p.first}};
        if (p.kind == NeuronKind::phasor_source) {
            jp["phases"] = p.phases;
        }
        if (p.kind == NeuronKind::phase_mult) {
            jp["alpha"] = p.alpha;
        }
        if (p.kind == NeuronKind::resonate_fire) {
            jp["rf"] = {{"decay_per_s", p.rf.decay_per_s}, {"threshold", p.rf.threshold},
                    {"saturation", p.rf.saturation}, {"timing", timing_name(p.rf.timing)},
                    {"fire_phase_rad", p.rf.fire_phase_rad},
                    {"refractory_cycles", p.rf.refractory_cycles}};
        }
        doc["populations"].push_back(std::move(jp));
    }
    doc["connections"] = json::array();
    for (const auto &c : net.connections()) {
        json jc{{"source", c.source}, {"target", c.target}, {"weight", c.weight},
                {"delay_s", c.delay_s}};
        if (c.port != Port::unlabeled) {
            jc["port"] = to_string(c.port);
        }
        doc["connections"].push_back(std::move(jc));
    }
    doc["readouts"] = json::array();
    for (const auto &r : net.readouts()) {
        doc["readouts"].push_back(
                {{"label", r.label}, {"population", r.population}, {"shift", r.shift}});
    }
    return doc.dump();
}

Network network_from_json(std::string_view text)
{
    using nlohmann::json;
    try {
        const json doc = json::parse(text);
        Network net(doc.at("base_frequency_hz").get<double>());
        for (const auto &jp : doc.at("populations")) {
            Population p;
            p.name = jp.at("name").get<std::string>();
            p.kind = neuron_kind_from_string(jp.at("kind").get<std::string>());
            p.size = jp.at("size").get<std::size_t>();
            if (jp.contains("phases")) {
                p.phases = jp.at("phases").get<std::vector<double>>();
            }
            p.alpha = jp.value("alpha", 1.0);
            if (jp.contains("rf")) {
                const auto &r = jp.at("rf");
                p.rf.decay_per_s = r.at("decay_per_s").get<double>();
                p.rf.threshold = r.at("threshold").get<double>();
                p.rf.saturation = r.at("saturation").get<double>();
                p.rf.timing = timing_from_string(r.at("timing").get<std::string>());
                p.rf.fire_phase_rad = r.value("fire_phase_rad", 0.0);
                p.rf.refractory_cycles = r.value("refractory_cycles", 0.9);
            }
            net.add_population(std::move(p));
        }
        for (const auto &jc : doc.at("connections")) {
            Connection c;
            c.source = jc.at("source").get<NeuronId>();
            c.target = jc.at("target").get<NeuronId>();
            c.weight = jc.value("weight", 1.0);
            c.delay_s = jc.value("delay_s", 0.0);
            c.port = port_from_string(jc.value("port", std::string{}));
            net.connect(c);
        }
        if (doc.contains("readouts")) {
            for (const auto &jr : doc.at("readouts")) {
                net.add_readout({jr.at("label").get<std::string>(),
                        jr.at("population").get<std::string>(), jr.value("shift", 0L)});
            }
        }
        return net;
    } catch (const json::exception &e) {
        throw ValidationError(std::string("invalid network document: ") + e.what());
    }
}

} // namespace phasor
