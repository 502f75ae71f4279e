#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "phasor/errors.hpp"
#include "phasor_tools/experiments.hpp"

namespace phasor::tools {

using nlohmann::json;

std::string git_blob_sha1(std::string_view content)
{
    const std::string header = "blob " + std::to_string(content.size()) + '\0';
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha1(), nullptr) != 1
            || EVP_DigestUpdate(ctx.get(), header.data(), header.size()) != 1
            || EVP_DigestUpdate(ctx.get(), content.data(), content.size()) != 1
            || EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
        throw Error("SHA-1 digest failed");
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) {
        os << std::setw(2) << static_cast<int>(digest[i]);
    }
    return os.str();
}

namespace {

void write_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw ValidationError("write failed for " + path.string());
    }
}

json spec_json(const ExperimentSpec &spec)
{
    json j;
    j["kind"] = to_string(spec.kind);
    j["dim"] = spec.dim;
    j["seed"] = spec.seed;
    j["sim"] = {
        {"base_frequency_hz", spec.sim.base_frequency_hz},
        {"dt_s", spec.sim.dt_s},
        {"duration_cycles", spec.sim.duration_cycles},
        {"mode", to_string(spec.sim.mode)},
        {"readout_cycle", spec.readout_cycle()},
    };
    if (spec.kind == ExperimentKind::expression) {
        j["expression"] = spec.expression;
    }
    if (spec.vocabulary) {
        j["vocabulary_file"] = spec.vocabulary->generic_string();
    }
    return j;
}

json run_json(const NetworkRun &r)
{
    return {
        {"label", r.label},
        {"network_sha1", r.network_sha1},
        {"neuron_count", r.neuron_count},
        {"cleanup_neurons", r.cleanup_neurons},
        {"anomalies", r.anomalies},
    };
}

json issues_json(const std::vector<ReadoutIssue> &issues)
{
    json a = json::array();
    for (const auto &i : issues) {
        a.push_back({{"tap", i.tap}, {"message", i.message}});
    }
    return a;
}

json outcome_json(const QueryOutcome &q)
{
    return {
        {"query", q.report.query},
        {"expected", q.expected},
        {"winner", q.report.winner},
        {"score", q.report.winner_score},
        {"correct", q.correct()},
    };
}

json sweep_json(const SspSweep &s)
{
    return {{"query", s.query}, {"peak_x", s.peak_x()}, {"peak_value", s.peak_value()}};
}

void write_manifest(const std::filesystem::path &dir, const ExperimentSpec &spec,
        const std::vector<NetworkRun> &runs, const std::vector<std::string> &files)
{
    json m;
    m["spec"] = spec_json(spec);
    m["networks"] = json::array();
    // Stopwatch queries share one topology, so the largest network is the
    // experiment's size.
    std::size_t neurons = 0;
    for (const auto &r : runs) {
        m["networks"].push_back(run_json(r));
        neurons = std::max(neurons, r.neuron_count);
    }
    m["neuron_count"] = neurons;
    m["outputs"] = files;
    write_file(dir / "manifest.json", m.dump(2) + "\n");
}

std::string similarity_csv(std::span<const SimilarityReport> reports)
{
    std::ostringstream os;
    write_similarity_csv(os, reports);
    return os.str();
}

std::string sweep_csv(std::span<const SspSweep> sweeps)
{
    std::ostringstream os;
    write_sweep_csv(os, sweeps);
    return os.str();
}

json phases_json(const PhasorVector &v)
{
    if (v.empty()) {
        return nullptr;
    }
    return std::vector<double>(v.phases().begin(), v.phases().end());
}

} // namespace

void write_outputs(const std::filesystem::path &dir, const ExperimentSpec &spec,
        const StopwatchResult &result)
{
    std::filesystem::create_directories(dir);
    std::vector<SimilarityReport> reports;
    json summary;
    summary["queries"] = json::array();
    bool all = true;
    for (const auto &q : result.queries) {
        reports.push_back(q.report);
        summary["queries"].push_back(outcome_json(q));
        all = all && q.correct();
    }
    summary["all_correct"] = all;
    summary["issues"] = issues_json(result.issues);
    write_file(dir / "similarity.csv", similarity_csv(reports));
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    write_manifest(dir, spec, result.runs, {"similarity.csv", "summary.json"});
}

void write_outputs(const std::filesystem::path &dir, const ExperimentSpec &spec,
        const SpatialResult &result)
{
    std::filesystem::create_directories(dir);
    const SimilarityReport reports[] = {result.location.report};
    const SspSweep sweeps[] = {result.q1, result.q2};
    const SspSweep oracle[] = {result.q1_oracle, result.q2_oracle};
    json summary;
    summary["location"] = outcome_json(result.location);
    summary["sweeps"] = {sweep_json(result.q1), sweep_json(result.q2)};
    summary["oracle_sweeps"] = {sweep_json(result.q1_oracle), sweep_json(result.q2_oracle)};
    summary["encoded_locations"] = {{"q1", 1.85}, {"q2", -0.65}};
    summary["issues"] = issues_json(result.issues);
    write_file(dir / "similarity.csv", similarity_csv(reports));
    write_file(dir / "sweep.csv", sweep_csv(sweeps));
    write_file(dir / "sweep_oracle.csv", sweep_csv(oracle));
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    write_manifest(dir, spec, {result.run},
            {"similarity.csv", "sweep.csv", "sweep_oracle.csv", "summary.json"});
}

void write_outputs(const std::filesystem::path &dir, const ExperimentSpec &spec,
        const ExpressionResult &result)
{
    std::filesystem::create_directories(dir);
    const SimilarityReport reports[] = {result.report};
    json decoded;
    decoded["expression"] = result.canonical;
    decoded["decoded"] = phases_json(result.decoded);
    decoded["oracle"] = phases_json(result.oracle);
    decoded["max_deviation_rad"] = result.max_deviation_rad;
    decoded["issues"] = issues_json(result.issues);
    write_file(dir / "similarity.csv", similarity_csv(reports));
    write_file(dir / "decoded.json", decoded.dump(2) + "\n");
    write_manifest(dir, spec, {result.run}, {"similarity.csv", "decoded.json"});
}

} // namespace phasor::tools
