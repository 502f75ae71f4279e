#include "phasor_tools/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "phasor/errors.hpp"
#include "phasor/expr.hpp"

namespace phasor::tools {

std::string_view to_string(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::stopwatch: return "stopwatch";
    case ExperimentKind::spatial: return "spatial";
    case ExperimentKind::expression: return "expression";
    }
    return "unknown";
}

SimConfig ExperimentSpec::default_sim_config()
{
    SimConfig c;
    c.base_frequency_hz = 10.0;
    c.dt_s = 1e-4;
    c.duration_cycles = 16;
    return c;
}

void ExperimentSpec::validate() const
{
    if (dim < 1) {
        throw ValidationError("dim must be at least 1");
    }
    sim.validate();
    if (sim.duration_cycles < 2) {
        throw ValidationError("at least 2 cycles are needed for a readout");
    }
    if (kind == ExperimentKind::expression && expression.empty()) {
        throw ValidationError("no expression given");
    }
}

namespace {

struct Simulated
{
    CompiledNetwork compiled;
    SpikeRecord record;
    NetworkRun run;
};

Simulated simulate(std::span<const ExprPtr> roots, const Vocabulary &symbols,
        const ExperimentSpec &spec, const std::vector<std::string> &labels,
        const std::string &run_label, CleanupVocabularies cleanup_vocabularies = {})
{
    CompileOptions options;
    options.base_frequency_hz = spec.sim.base_frequency_hz;
    options.cleanup = spec.cleanup;
    options.cleanup_vocabularies = std::move(cleanup_vocabularies);
    Simulated s{compile(roots, symbols, options, labels), {}, {}};
    s.record = run(s.compiled.network, spec.sim);
    const Network &net = s.compiled.network;
    s.run.label = run_label;
    s.run.network_sha1 = git_blob_sha1(network_to_json(net));
    s.run.neuron_count = net.neuron_count();
    for (const auto &c : s.compiled.cleanups) {
        s.run.cleanup_neurons += net.population(c.g_population).size
                + net.population(c.h_population).size;
    }
    s.run.anomalies = s.record.anomalies().size();
    return s;
}

std::string join(const std::vector<std::size_t> &xs)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << (i ? " " : "") << xs[i];
    }
    return os.str();
}

// Decodes a tap in the readout cycle, recording anything that makes the
// value unreliable.
std::optional<PhasorVector> read_tap(const Simulated &s, const std::string &tap, int cycle,
        std::vector<ReadoutIssue> &issues)
{
    try {
        auto r = record_to_vector(s.record, s.compiled.network, s.compiled.network.readout(tap), cycle);
        if (!r.multi_spike.empty()) {
            issues.push_back({tap, "multiple spikes in readout cycle at components " + join(r.multi_spike)});
        }
        return std::move(r.vector);
    } catch (const ReadoutError &e) {
        issues.push_back({tap, "silent components " + join(e.silent())});
        return std::nullopt;
    }
}

// Anomalies during the settling cycles are expected; only ones inside the
// readout cycle make the result suspect.
void readout_cycle_anomalies(const Simulated &s, int cycle,
        std::vector<ReadoutIssue> &issues)
{
    const double period = s.record.period_s();
    for (const auto &a : s.record.anomalies()) {
        const double c = a.time_s / period;
        if (c >= cycle - kBoundarySnap && c < cycle + 1 - kBoundarySnap) {
            issues.push_back({s.compiled.network.population_of(a.neuron).name, a.message});
        }
    }
}

void require_names(const Vocabulary &v, std::initializer_list<std::string_view> names)
{
    for (auto n : names) {
        if (!v.contains(n)) {
            throw ValidationError("vocabulary lacks '" + std::string(n) + "'");
        }
    }
}

void collect_symbols(const Expr &e, std::vector<std::string> &out)
{
    if (e.kind == ExprKind::symbol) {
        if (std::find(out.begin(), out.end(), e.name) == out.end()) {
            out.push_back(e.name);
        }
        return;
    }
    if (e.left) {
        collect_symbols(*e.left, out);
    }
    if (e.right) {
        collect_symbols(*e.right, out);
    }
}

} // namespace

const std::vector<Transition> &stopwatch_transitions()
{
    static const std::vector<Transition> table{
        {"C", "R", "C"},
        {"C", "S", "T"},
        {"T", "R", "T"},
        {"T", "S", "P"},
        {"P", "R", "C"},
        {"P", "S", "T"},
    };
    return table;
}

PhasorVector stopwatch_table(const Vocabulary &v)
{
    std::vector<PhasorVector> terms;
    for (const auto &t : stopwatch_transitions()) {
        terms.push_back(bind(bind(v.at(t.state), v.at(t.action)), permute(v.at(t.next), 1)));
    }
    return bundle(terms);
}

Vocabulary spatial_vocabulary(std::size_t dim, std::uint64_t seed)
{
    Vocabulary v = Vocabulary::random(dim, seed, {"Square", "Circle", "Red", "Blue", "X", "Y"});
    const auto conj = [&](const char *colour, const char *shape) {
        v.add(std::string(colour) + "*" + shape, bind(v.at(colour), v.at(shape)));
    };
    conj("Red", "Square");
    conj("Blue", "Circle");
    conj("Red", "Circle");
    conj("Blue", "Square");
    return v;
}

StopwatchResult run_stopwatch(const ExperimentSpec &spec)
{
    if (spec.vocabulary) {
        return run_stopwatch(spec, load_vocabulary(*spec.vocabulary));
    }
    return run_stopwatch(spec, Vocabulary::random(spec.dim, spec.seed, {"C", "T", "P", "R", "S"}));
}

StopwatchResult run_stopwatch(const ExperimentSpec &spec, const Vocabulary &vocabulary)
{
    spec.validate();
    require_names(vocabulary, {"C", "T", "P", "R", "S"});
    Vocabulary states(vocabulary.dim());
    for (const char *n : {"C", "T", "P", "R", "S"}) {
        states.add(n, vocabulary.at(n));
    }
    const PhasorVector f = stopwatch_table(states);
    const auto root = parse_expression("cleanup(rho(f / s / a, -1))");
    const int cycle = spec.readout_cycle();

    struct Partial
    {
        QueryOutcome outcome;
        NetworkRun run;
        std::vector<ReadoutIssue> issues;
    };
    const auto &table = stopwatch_transitions();
    std::vector<std::future<Partial>> jobs;
    for (const auto &t : table) {
        jobs.push_back(std::async(std::launch::async, [&, t] {
            Vocabulary symbols(states.dim());
            symbols.add("f", f);
            symbols.add("s", states.at(t.state));
            symbols.add("a", states.at(t.action));
            // The clean-up resolves against the states and actions, not f/s/a.
            CleanupVocabularies cleanup;
            cleanup.emplace("", states);
            const std::string label = t.state + "," + t.action;
            const ExprPtr roots[] = {root};
            Simulated s = simulate(roots, symbols, spec, {"out"}, label, std::move(cleanup));
            Partial p;
            readout_cycle_anomalies(s, cycle, p.issues);
            p.run = s.run;
            p.outcome.expected = t.next;
            p.outcome.report.query = label;
            if (auto v = read_tap(s, "out", cycle, p.issues)) {
                p.outcome.report = similarity_report(label, *v, states);
            }
            for (auto &i : p.issues) {
                i.tap = label + ":" + i.tap;
            }
            return p;
        }));
    }

    StopwatchResult result;
    result.vocabulary = states;
    for (auto &j : jobs) {
        Partial p = j.get();
        result.queries.push_back(std::move(p.outcome));
        result.runs.push_back(std::move(p.run));
        result.issues.insert(result.issues.end(), p.issues.begin(), p.issues.end());
    }
    return result;
}

SpatialResult run_spatial(const ExperimentSpec &spec)
{
    if (spec.vocabulary) {
        return run_spatial(spec, load_vocabulary(*spec.vocabulary));
    }
    return run_spatial(spec, spatial_vocabulary(spec.dim, spec.seed));
}

SpatialResult run_spatial(const ExperimentSpec &spec, const Vocabulary &vocabulary)
{
    spec.validate();
    require_names(vocabulary, {"Square", "Circle", "Red", "Blue", "X"});
    const std::string v = "(Red*Square*X^1.85 + Blue*Circle*X^-0.65)";
    const std::vector<ExprPtr> roots{
        parse_expression("cleanup(" + v + " / X^1.85)"),
        parse_expression(v + " / (Red*Square)"),
        parse_expression(v + " / (Blue*Circle)"),
    };
    Simulated s = simulate(roots, vocabulary, spec, {"location", "q1", "q2"}, "spatial");
    const int cycle = spec.readout_cycle();
    const PhasorVector &axis = vocabulary.at("X");

    SpatialResult result;
    result.vocabulary = vocabulary;
    result.run = s.run;
    readout_cycle_anomalies(s, cycle, result.issues);
    result.location.expected = "Red*Square";
    result.location.report.query = "location";
    if (auto loc = read_tap(s, "location", cycle, result.issues)) {
        result.location.report = similarity_report("location", *loc, vocabulary);
    }
    const auto sweep = [&](const std::string &tap, SspSweep &out) {
        if (auto q = read_tap(s, tap, cycle, result.issues)) {
            out = ssp_sweep(*q, axis);
        }
        out.query = tap;
        out.axis = "X";
    };
    sweep("q1", result.q1);
    sweep("q2", result.q2);
    result.q1_oracle = ssp_sweep(evaluate(*roots[1], vocabulary), axis);
    result.q1_oracle.query = "q1_oracle";
    result.q1_oracle.axis = "X";
    result.q2_oracle = ssp_sweep(evaluate(*roots[2], vocabulary), axis);
    result.q2_oracle.query = "q2_oracle";
    result.q2_oracle.axis = "X";
    return result;
}

ExpressionResult run_expression(const ExperimentSpec &spec)
{
    spec.validate();
    const ExprPtr root = parse_expression(spec.expression);
    std::vector<std::string> names;
    collect_symbols(*root, names);
    Vocabulary symbols = spec.vocabulary ? load_vocabulary(*spec.vocabulary)
                                         : Vocabulary::random(spec.dim, spec.seed, names);
    for (const auto &n : names) {
        if (!symbols.contains(n)) {
            throw ValidationError("unresolved symbol '" + n + "'");
        }
    }

    const ExprPtr roots[] = {root};
    Simulated s = simulate(roots, symbols, spec, {"out"}, "expression");
    ExpressionResult result;
    result.canonical = to_string(*root);
    result.symbols = symbols;
    result.run = s.run;
    result.oracle = evaluate(*root, symbols);
    readout_cycle_anomalies(s, spec.readout_cycle(), result.issues);
    if (auto v = read_tap(s, "out", spec.readout_cycle(), result.issues)) {
        result.decoded = std::move(*v);
        result.max_deviation_rad = max_phase_deviation(result.decoded, result.oracle);
        result.report = similarity_report(result.canonical, result.decoded, symbols);
    }
    return result;
}

} // namespace phasor::tools
