// phasor: run the stopwatch and spatial-memory experiments or an ad-hoc
// expression through the spiking compiler.
//
// Exit codes: 0 success, 2 readout anomaly, 3 validation failure.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "phasor/errors.hpp"
#include "phasor_tools/experiments.hpp"

namespace {

using namespace phasor;
using namespace phasor::tools;

constexpr int kExitAnomaly = 2;
constexpr int kExitInvalid = 3;

struct Options
{
    std::optional<std::size_t> dim;
    std::uint64_t seed = 1;
    std::optional<double> freq_hz;
    std::optional<double> dt_s;
    std::optional<std::string> mode;
    std::optional<int> cycles;
    std::string out = "phasor_out";
    std::optional<std::string> vocab;
    std::optional<std::string> config;
    std::string expression;
};

void add_common(CLI::App &cmd, Options &o)
{
    cmd.add_option("--dim", o.dim, "Vector dimension (stopwatch 100, spatial 200, eval 100)");
    cmd.add_option("--seed", o.seed, "Vocabulary seed")->capture_default_str();
    cmd.add_option("--freq-hz", o.freq_hz, "Base oscillation frequency (default 10)");
    cmd.add_option("--dt", o.dt_s, "Fixed-step size in seconds (default T/1000)");
    cmd.add_option("--mode", o.mode, "Simulation mode")->check(CLI::IsMember({"fixed", "event"}));
    cmd.add_option("--cycles", o.cycles, "Simulated cycles (default 16)");
    cmd.add_option("--out", o.out, "Output directory")->capture_default_str();
    cmd.add_option("--vocab", o.vocab, "Vocabulary JSON replacing the seeded symbols");
    cmd.add_option("--config", o.config, "Simulation config file (key = value lines)");
}

ExperimentSpec make_spec(ExperimentKind kind, const Options &o)
{
    ExperimentSpec spec;
    spec.kind = kind;
    spec.dim = o.dim.value_or(kind == ExperimentKind::spatial ? 200 : 100);
    spec.seed = o.seed;
    if (o.config) {
        spec.sim = load_sim_config(*o.config, spec.sim);
    }
    if (o.freq_hz) {
        spec.sim.base_frequency_hz = *o.freq_hz;
        if (!o.dt_s) {
            spec.sim.dt_s = 1.0 / (1000.0 * *o.freq_hz);
        }
    }
    if (o.dt_s) {
        spec.sim.dt_s = *o.dt_s;
    }
    if (o.mode) {
        spec.sim.mode = sim_mode_from_string(*o.mode);
    }
    if (o.cycles) {
        spec.sim.duration_cycles = *o.cycles;
    }
    if (o.vocab) {
        spec.vocabulary = *o.vocab;
    }
    spec.expression = o.expression;
    spec.validate();
    return spec;
}

int report_issues(const std::vector<ReadoutIssue> &issues)
{
    for (const auto &i : issues) {
        std::fprintf(stderr, "anomaly: %s: %s\n", i.tap.c_str(), i.message.c_str());
    }
    return issues.empty() ? 0 : kExitAnomaly;
}

int stopwatch(const Options &o)
{
    const ExperimentSpec spec = make_spec(ExperimentKind::stopwatch, o);
    const StopwatchResult r = run_stopwatch(spec);
    write_outputs(o.out, spec, r);
    for (const auto &q : r.queries) {
        std::printf("%-4s -> %-2s score %.4f  expected %s  %s\n", q.report.query.c_str(),
                q.report.winner.c_str(), q.report.winner_score, q.expected.c_str(),
                q.correct() ? "ok" : "WRONG");
    }
    std::printf("neurons per query network: %zu (clean-up %zu)\n", r.runs.front().neuron_count,
            r.runs.front().cleanup_neurons);
    return report_issues(r.issues);
}

int spatial(const Options &o)
{
    const ExperimentSpec spec = make_spec(ExperimentKind::spatial, o);
    const SpatialResult r = run_spatial(spec);
    write_outputs(o.out, spec, r);
    std::printf("location 1.85 -> %s score %.4f\n", r.location.report.winner.c_str(),
            r.location.report.winner_score);
    if (!r.q1.x.empty() && !r.q2.x.empty()) {
        std::printf("q1 peak %.2f (oracle %.2f, encoded 1.85)\n", r.q1.peak_x(), r.q1_oracle.peak_x());
        std::printf("q2 peak %.2f (oracle %.2f, encoded -0.65)\n", r.q2.peak_x(), r.q2_oracle.peak_x());
    }
    std::printf("neurons: %zu (clean-up %zu)\n", r.run.neuron_count, r.run.cleanup_neurons);
    return report_issues(r.issues);
}

int eval(const Options &o)
{
    const ExperimentSpec spec = make_spec(ExperimentKind::expression, o);
    const ExpressionResult r = run_expression(spec);
    write_outputs(o.out, spec, r);
    std::printf("%s\n", r.canonical.c_str());
    if (!r.decoded.empty()) {
        std::printf("max deviation from oracle: %.3g rad\n", r.max_deviation_rad);
        for (const auto &e : r.report.entries) {
            std::printf("  %-12s %+.4f%s\n", e.name.c_str(), e.similarity,
                    e.name == r.report.winner ? "  *" : "");
        }
    }
    std::printf("neurons: %zu\n", r.run.neuron_count);
    return report_issues(r.issues);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Spiking phasor VSA experiments"};
    app.require_subcommand(1);
    Options o;
    auto *sw = app.add_subcommand("stopwatch", "Stopwatch state-transition queries");
    auto *sp = app.add_subcommand("spatial", "Spatial memory queries and SSP sweeps");
    auto *ev = app.add_subcommand("eval", "Compile and simulate one expression");
    add_common(*sw, o);
    add_common(*sp, o);
    add_common(*ev, o);
    ev->add_option("expr", o.expression, "Expression, e.g. \"A * B / B\"")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::Error &e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (sw->parsed()) {
            return stopwatch(o);
        }
        if (sp->parsed()) {
            return spatial(o);
        }
        return eval(o);
    } catch (const ParseError &e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitInvalid;
    } catch (const ValidationError &e) {
        std::fprintf(stderr, "invalid: %s\n", e.what());
        return kExitInvalid;
    } catch (const DimensionMismatch &e) {
        std::fprintf(stderr, "invalid: %s\n", e.what());
        return kExitInvalid;
    } catch (const ReadoutError &e) {
        std::fprintf(stderr, "anomaly: %s\n", e.what());
        return kExitAnomaly;
    } catch (const SimulationError &e) {
        std::fprintf(stderr, "anomaly: %s\n", e.what());
        return kExitAnomaly;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
