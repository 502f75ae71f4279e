#pragma once
// End-to-end experiment drivers behind the `phasor` command.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasor/compiler.hpp"
#include "phasor/engine.hpp"
#include "phasor/readout.hpp"
#include "phasor/vocabulary.hpp"

namespace phasor::tools {

enum class ExperimentKind
{
    stopwatch,
    spatial,
    expression,
};

std::string_view to_string(ExperimentKind kind);

struct ExperimentSpec
{
    ExperimentKind kind = ExperimentKind::stopwatch;
    std::size_t dim = 100;
    std::uint64_t seed = 1;
    SimConfig sim = default_sim_config();
    std::string expression;                        // expression kind only
    std::optional<std::filesystem::path> vocabulary; // replaces seeded symbols
    CleanupParams cleanup;

    /// 16 cycles at 10 Hz with dt = T/1000.
    static SimConfig default_sim_config();
    /// Cycle the readouts decode: the last complete one.
    int readout_cycle() const { return sim.duration_cycles - 1; }
    /// Throws ValidationError on a bad dimension, simulation config or
    /// missing expression.
    void validate() const;
};

/// A readout problem that makes a run's result untrustworthy: a silent
/// component, or a neuron spiking twice in the readout cycle.
struct ReadoutIssue
{
    std::string tap;
    std::string message;
};

/// One compiled and simulated network.
struct NetworkRun
{
    std::string label;
    std::string network_sha1; // git blob hash of the network JSON
    std::size_t neuron_count = 0;
    std::size_t cleanup_neurons = 0;
    std::size_t anomalies = 0; // all engine anomalies, including transients
};

struct QueryOutcome
{
    SimilarityReport report;
    std::string expected;
    bool correct() const { return report.winner == expected; }
};

struct StopwatchResult
{
    Vocabulary vocabulary;
    std::vector<QueryOutcome> queries; // (C,R) (C,S) (T,R) (T,S) (P,R) (P,S)
    std::vector<NetworkRun> runs;
    std::vector<ReadoutIssue> issues;
};

struct SpatialResult
{
    Vocabulary vocabulary; // 10 entries: 6 base symbols, 4 conjunctions
    QueryOutcome location;
    SspSweep q1;
    SspSweep q2;
    SspSweep q1_oracle;
    SspSweep q2_oracle;
    NetworkRun run;
    std::vector<ReadoutIssue> issues;
};

struct ExpressionResult
{
    std::string canonical;
    Vocabulary symbols;
    PhasorVector decoded;
    PhasorVector oracle;
    double max_deviation_rad = 0.0;
    SimilarityReport report;
    NetworkRun run;
    std::vector<ReadoutIssue> issues;
};

/// Expected next state for each (state, action) query.
struct Transition
{
    std::string state;
    std::string action;
    std::string next;
};
const std::vector<Transition> &stopwatch_transitions();

/// Bundle of C⊗R⊗ρ(C), C⊗S⊗ρ(T), T⊗R⊗ρ(T), T⊗S⊗ρ(P), P⊗R⊗ρ(C), P⊗S⊗ρ(T).
PhasorVector stopwatch_table(const Vocabulary &states_and_actions);

/// Square, Circle, Red, Blue, X, Y and the four colour-shape bindings.
Vocabulary spatial_vocabulary(std::size_t dim, std::uint64_t seed);

/// Queries run in parallel, one network each.
StopwatchResult run_stopwatch(const ExperimentSpec &spec);
StopwatchResult run_stopwatch(const ExperimentSpec &spec, const Vocabulary &vocabulary);
SpatialResult run_spatial(const ExperimentSpec &spec);
SpatialResult run_spatial(const ExperimentSpec &spec, const Vocabulary &vocabulary);
/// Symbols come from spec.vocabulary or are drawn per name from spec.seed.
ExpressionResult run_expression(const ExperimentSpec &spec);

/// Writes the readout CSVs, a summary JSON and manifest.json into `dir`.
void write_outputs(const std::filesystem::path &dir, const ExperimentSpec &spec,
        const StopwatchResult &result);
void write_outputs(const std::filesystem::path &dir, const ExperimentSpec &spec,
        const SpatialResult &result);
void write_outputs(const std::filesystem::path &dir, const ExperimentSpec &spec,
        const ExpressionResult &result);

/// SHA-1 of "blob <size>\0<content>", hex encoded.
std::string git_blob_sha1(std::string_view content);

} // namespace phasor::tools
