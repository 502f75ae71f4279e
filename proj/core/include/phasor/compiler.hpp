#pragma once

// Lowers VSA expressions into spiking networks.
//
//   symbol    N phasor sources
//   a * b     N phase-sum neurons
//   a / b     N phase-sub neurons, a on port `a`, b on port `b`
//   a + b     N phase-avg neurons
//   a ^ α     N phase-mult neurons
//   rho(a, k) no neurons: a rotated view of a's population
//   cleanup   G (N resonate-and-fire) and H (M resonate-and-fire)
//
// Structurally identical subexpressions are compiled once.

#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "phasor/expr.hpp"
#include "phasor/fhrr.hpp"
#include "phasor/network.hpp"
#include "phasor/vocabulary.hpp"

namespace phasor {

struct CleanupParams
{
    /// H amplitude halves in three cycles.
    double decay_per_cycle = std::numbers::ln2 / 3.0;
    /// G forgets faster so that it locks onto the feedback pattern.
    double g_decay_per_cycle = std::numbers::ln2 / 3.0;
    /// Threshold as a fraction of the summed feedforward weight of a
    /// neuron's inputs (1 for G, N for H).
    double threshold_factor = 0.5;
    /// Inhibitory H-to-H weight as a multiple of the H threshold.
    double inhibition_factor = 1.5;
    /// Weight of the H-to-G feedback relative to the unit input weight.
    double feedback_gain = 100.0;
    /// Amplitude cap as a multiple of threshold.
    double saturation_factor = 10.0;
    /// G's cap in units of one feedback kick.
    double g_saturation_per_gain = 0.5;
    /// Clock phase at which H neurons fire.
    double h_fire_phase_rad = std::numbers::pi;
    double refractory_cycles = 0.9;
};

struct CompileOptions
{
    double base_frequency_hz = 10.0;
    CleanupParams cleanup;
    /// Named vocabularies for clean-up nodes; the default falls back to the
    /// symbol vocabulary.
    CleanupVocabularies cleanup_vocabularies;
};

/// Where a compiled value lives: component k is neuron
/// population[(k + shift) mod size].
struct View
{
    std::string population;
    long shift = 0;
};

struct CleanupAssembly
{
    std::string g_population;
    std::string h_population;
    std::vector<std::string> vocabulary; // H neuron k stands for entry k
};

struct CompiledNetwork
{
    Network network;
    std::vector<View> outputs;            // one per root
    std::vector<CleanupAssembly> cleanups;
};

/// Compiles several roots into one network. Readout taps are added under
/// `labels` (default "out0", "out1", ...); clean-up roots also get a
/// "<label>.winner" tap on their H population. Throws ValidationError for
/// unresolved symbols and DimensionMismatch for inconsistent sizes.
CompiledNetwork compile(std::span<const ExprPtr> roots, const Vocabulary &symbols,
        const CompileOptions &options = {}, const std::vector<std::string> &labels = {});

CompiledNetwork compile(const ExprPtr &root, const Vocabulary &symbols,
        const CompileOptions &options = {});

/// Adds a population of N phasor sources, neuron k firing at phase v_k.
NeuronId encode_population(Network &net, const PhasorVector &v, const std::string &name);

struct SynapseCode
{
    double weight = 1.0;
    double delay_s = 0.0;
};

/// Unit weight and delay T·v_k/2π per component; with `conjugate` the
/// delay encodes −v_k instead.
std::vector<SynapseCode> phases_to_delays(const PhasorVector &v, double period_s,
        bool conjugate = false);

std::size_t neuron_count(const Network &net);

} // namespace phasor
