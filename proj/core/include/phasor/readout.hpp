#pragma once

// Turns spike records into vectors, similarity reports and SSP sweeps.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phasor/engine.hpp"
#include "phasor/fhrr.hpp"
#include "phasor/network.hpp"
#include "phasor/vocabulary.hpp"

namespace phasor {

struct VectorReadout
{
    PhasorVector vector;
    std::vector<std::size_t> multi_spike; // components that spiked more than once
};

/// Component k is the decoded phase of the tap's k-th neuron in `cycle`.
/// Throws ReadoutError listing the components that stayed silent.
VectorReadout record_to_vector(const SpikeRecord &record, const Network &net,
        const Readout &tap, int cycle);

/// Same, for a whole population in neuron order.
VectorReadout record_to_vector(const SpikeRecord &record, const Network &net,
        const std::string &population, int cycle);

/// Indices of the tap's neurons that spiked in `cycle`.
std::vector<std::size_t> active_components(const SpikeRecord &record, const Network &net,
        const Readout &tap, int cycle);

struct SimilarityEntry
{
    std::string name;
    double similarity = 0.0;
};

struct SimilarityReport
{
    std::string query;
    std::vector<SimilarityEntry> entries; // vocabulary order
    std::string winner;
    double winner_score = 0.0;
};

/// Similarity of v to every entry; ties go to the lowest index.
SimilarityReport similarity_report(const std::string &query, const PhasorVector &v,
        const Vocabulary &vocab);

/// CSV `query,vocab_name,similarity,winner_flag`.
void write_similarity_csv(std::ostream &out, std::span<const SimilarityReport> reports);

struct SspSweep
{
    std::string query;
    std::string axis;
    std::vector<double> x;
    std::vector<double> similarity;

    /// Grid point with the largest similarity (first one on ties).
    double peak_x() const;
    double peak_value() const;
};

/// similarity(q, axis^x) on `steps` evenly spaced points of [x_min, x_max].
SspSweep ssp_sweep(const PhasorVector &q, const PhasorVector &axis, double x_min = -3.0,
        double x_max = 3.0, std::size_t steps = 601);

/// CSV `query,x,similarity`.
void write_sweep_csv(std::ostream &out, std::span<const SspSweep> sweeps);

} // namespace phasor
