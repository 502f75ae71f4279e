#include "phasor/readout.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "phasor/errors.hpp"

namespace phasor {

namespace {

VectorReadout read_ids(const SpikeRecord &record, const std::vector<NeuronId> &ids,
        const std::string &what, int cycle)
{
    std::vector<double> phases(ids.size());
    std::vector<std::size_t> silent;
    VectorReadout out;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        const auto decoded = decode_phase(record, ids[k], cycle);
        if (!decoded) {
            silent.push_back(k);
            continue;
        }
        phases[k] = decoded->phase_rad;
        if (decoded->spikes_in_cycle > 1) {
            out.multi_spike.push_back(k);
        }
    }
    if (!silent.empty()) {
        throw ReadoutError(what, std::move(silent));
    }
    out.vector = PhasorVector(std::move(phases));
    return out;
}

std::string csv_real(double x)
{
    std::ostringstream os;
    os << std::setprecision(15) << x;
    return os.str();
}

} // namespace

VectorReadout record_to_vector(const SpikeRecord &record, const Network &net,
        const Readout &tap, int cycle)
{
    return read_ids(record, net.readout_neurons(tap), tap.label, cycle);
}

VectorReadout record_to_vector(const SpikeRecord &record, const Network &net,
        const std::string &population, int cycle)
{
    return record_to_vector(record, net, Readout{population, population, 0}, cycle);
}

std::vector<std::size_t> active_components(const SpikeRecord &record, const Network &net,
        const Readout &tap, int cycle)
{
    const auto ids = net.readout_neurons(tap);
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (decode_phase(record, ids[k], cycle)) {
            active.push_back(k);
        }
    }
    return active;
}

SimilarityReport similarity_report(const std::string &query, const PhasorVector &v,
        const Vocabulary &vocab)
{
    if (vocab.empty()) {
        throw ValidationError("similarity report needs a nonempty vocabulary");
    }
    SimilarityReport report{query, {}, {}, 0.0};
    std::size_t best = 0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        const double s = similarity(v, vocab[i].vector);
        report.entries.push_back({vocab[i].name, s});
        if (s > report.entries[best].similarity) {
            best = i;
        }
    }
    report.winner = report.entries[best].name;
    report.winner_score = report.entries[best].similarity;
    return report;
}

void write_similarity_csv(std::ostream &out, std::span<const SimilarityReport> reports)
{
    out << "query,vocab_name,similarity,winner_flag\n";
    for (const auto &r : reports) {
        for (const auto &e : r.entries) {
            out << r.query << ',' << e.name << ',' << csv_real(e.similarity) << ','
                << (e.name == r.winner ? 1 : 0) << '\n';
        }
    }
}

double SspSweep::peak_x() const
{
    const auto it = std::max_element(similarity.begin(), similarity.end());
    return x.at(static_cast<std::size_t>(it - similarity.begin()));
}

double SspSweep::peak_value() const
{
    return *std::max_element(similarity.begin(), similarity.end());
}

SspSweep ssp_sweep(const PhasorVector &q, const PhasorVector &axis, double x_min, double x_max,
        std::size_t steps)
{
    if (steps < 2) {
        throw ValidationError("an SSP sweep needs at least two grid points");
    }
    if (!(x_max > x_min)) {
        throw ValidationError("an SSP sweep needs x_max > x_min");
    }
    if (q.dim() != axis.dim()) {
        throw DimensionMismatch(axis.dim(), q.dim());
    }
    SspSweep sweep;
    sweep.x.reserve(steps);
    sweep.similarity.reserve(steps);
    const double h = (x_max - x_min) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double x = i + 1 == steps ? x_max : x_min + h * static_cast<double>(i);
        sweep.x.push_back(x);
        sweep.similarity.push_back(similarity(q, fractional_power(axis, x)));
    }
    return sweep;
}

void write_sweep_csv(std::ostream &out, std::span<const SspSweep> sweeps)
{
    out << "query,x,similarity\n";
    for (const auto &s : sweeps) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            out << s.query << ',' << csv_real(s.x[i]) << ',' << csv_real(s.similarity[i]) << '\n';
        }
    }
}

} // namespace phasor
