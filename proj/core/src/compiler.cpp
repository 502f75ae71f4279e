#include "phasor/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "phasor/errors.hpp"
#include "phasor/phase.hpp"

namespace phasor {

namespace {

// Delay that moves a spike forward by `cycles` (taken modulo one cycle).
double cycles_to_delay(double cycles, double period_s)
{
    const double d = cycle_fraction(cycles) * period_s;
    return d < period_s ? d : 0.0;
}

struct Lowered
{
    NeuronId first;
    std::size_t size;
    long shift;

    NeuronId neuron(std::size_t k) const
    {
        const auto n = static_cast<long>(size);
        long i = (static_cast<long>(k) + shift) % n;
        if (i < 0) {
            i += n;
        }
        return first + static_cast<NeuronId>(i);
    }
};

class Compiler
{
public:
    Compiler(const Vocabulary &symbols, const CompileOptions &options)
        : symbols_(symbols), options_(options), period_s_(1.0 / options.base_frequency_hz)
    {
        result_.network = Network(options.base_frequency_hz);
    }

    View lower(const Expr &e)
    {
        const std::string key = to_string(e);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        View view = lower_fresh(e);
        memo_.emplace(key, view);
        return view;
    }

    CompiledNetwork finish() { return std::move(result_); }

    void add_readouts(const Expr &root, const View &view, const std::string &label)
    {
        result_.network.add_readout({label, view.population, view.shift});
        result_.outputs.push_back(view);
        if (root.kind == ExprKind::cleanup) {
            const auto it = std::find_if(result_.cleanups.begin(), result_.cleanups.end(),
                    [&](const CleanupAssembly &c) { return c.g_population == view.population; });
            if (it != result_.cleanups.end()) {
                result_.network.add_readout({label + ".winner", it->h_population, 0});
            }
        }
    }

private:
    Network &net() { return result_.network; }

    std::size_t dim() const { return symbols_.dim(); }

    Lowered resolve(const View &v)
    {
        const auto &pop = net().population(v.population);
        return {pop.first, pop.size, v.shift};
    }

    std::string fresh_name(std::string_view stem)
    {
        return std::string(stem) + "." + std::to_string(++counter_);
    }

    NeuronId add(std::string name, NeuronKind kind, std::size_t size)
    {
        Population p;
        p.name = std::move(name);
        p.kind = kind;
        p.size = size;
        return net().add_population(std::move(p));
    }

    void check_dim(const Lowered &l)
    {
        if (l.size != dim()) {
            throw DimensionMismatch(dim(), l.size);
        }
    }

    View binary(const Expr &e, NeuronKind kind, std::string_view stem)
    {
        const View lv = lower(*e.left);
        const View rv = lower(*e.right);
        const Lowered l = resolve(lv);
        const Lowered r = resolve(rv);
        check_dim(l);
        check_dim(r);
        const std::string name = fresh_name(stem);
        const NeuronId first = add(name, kind, dim());
        const bool ported = kind == NeuronKind::phase_sub;
        for (std::size_t k = 0; k < dim(); ++k) {
            const auto target = first + static_cast<NeuronId>(k);
            net().connect({l.neuron(k), target, 1.0, 0.0, ported ? Port::a : Port::unlabeled});
            net().connect({r.neuron(k), target, 1.0, 0.0, ported ? Port::b : Port::unlabeled});
        }
        return {name, 0};
    }

    View lower_fresh(const Expr &e)
    {
        switch (e.kind) {
        case ExprKind::symbol: {
            const auto *v = symbols_.find(e.name);
            if (v == nullptr) {
                throw ValidationError("unresolved symbol '" + e.name + "'");
            }
            const std::string name = "sym." + e.name;
            encode_population(net(), *v, name);
            return {name, 0};
        }
        case ExprKind::bind:
            return binary(e, NeuronKind::phase_sum, "bind");
        case ExprKind::unbind:
            return binary(e, NeuronKind::phase_sub, "unbind");
        case ExprKind::bundle:
            return binary(e, NeuronKind::phase_avg, "bundle");
        case ExprKind::permute: {
            View child = lower(*e.left);
            const auto n = static_cast<long>(dim());
            child.shift = ((child.shift + e.shift) % n + n) % n;
            return child;
        }
        case ExprKind::power: {
            const Lowered c = resolve(lower(*e.left));
            check_dim(c);
            Population p;
            p.name = fresh_name("power");
            p.kind = NeuronKind::phase_mult;
            p.size = dim();
            p.alpha = e.alpha;
            const std::string name = p.name;
            const NeuronId first = net().add_population(std::move(p));
            for (std::size_t k = 0; k < dim(); ++k) {
                net().connect({c.neuron(k), first + static_cast<NeuronId>(k), 1.0, 0.0, Port::unlabeled});
            }
            return {name, 0};
        }
        case ExprKind::cleanup:
            return cleanup(e);
        }
        throw ValidationError("malformed expression");
    }

    View cleanup(const Expr &e)
    {
        const Lowered in = resolve(lower(*e.left));
        check_dim(in);
        const Vocabulary &vocab =
                cleanup_vocabulary(e, symbols_, options_.cleanup_vocabularies);
        if (vocab.empty()) {
            throw ValidationError("clean-up vocabulary is empty");
        }
        if (vocab.dim() != dim()) {
            throw DimensionMismatch(dim(), vocab.dim());
        }
        const auto &cp = options_.cleanup;
        const std::size_t n = dim();
        const std::size_t m = vocab.size();
        const double decay_per_s = cp.decay_per_cycle * options_.base_frequency_hz;

        const std::string stem = fresh_name("cleanup");
        Population g;
        g.name = stem + ".G";
        g.kind = NeuronKind::resonate_fire;
        g.size = n;
        g.rf.decay_per_s = cp.g_decay_per_cycle * options_.base_frequency_hz;
        g.rf.threshold = cp.threshold_factor;
        g.rf.saturation = std::max(cp.saturation_factor * g.rf.threshold,
                cp.g_saturation_per_gain * cp.feedback_gain);
        g.rf.timing = SpikeTiming::oscillator_peak;
        g.rf.refractory_cycles = cp.refractory_cycles;

        Population h;
        h.name = stem + ".H";
        h.kind = NeuronKind::resonate_fire;
        h.size = m;
        h.rf.decay_per_s = decay_per_s;
        h.rf.threshold = cp.threshold_factor * static_cast<double>(n);
        h.rf.saturation = cp.saturation_factor * h.rf.threshold;
        h.rf.timing = SpikeTiming::fixed_phase;
        h.rf.fire_phase_rad = wrap_phase(cp.h_fire_phase_rad);
        h.rf.refractory_cycles = cp.refractory_cycles;

        const double inhibition = -cp.inhibition_factor * h.rf.threshold;
        const double psi = h.rf.fire_phase_rad / kTwoPi;
        const std::string g_name = g.name;
        const std::string h_name = h.name;
        const NeuronId g0 = net().add_population(std::move(g));
        const NeuronId h0 = net().add_population(std::move(h));

        for (std::size_t k = 0; k < n; ++k) {
            net().connect({in.neuron(k), g0 + static_cast<NeuronId>(k), 1.0, 0.0, Port::unlabeled});
        }
        for (std::size_t j = 0; j < m; ++j) {
            const auto hj = h0 + static_cast<NeuronId>(j);
            const auto &w = vocab[j].vector;
            // G -> H correlates with the conjugate of column j.
            const auto forward = phases_to_delays(w, period_s_, true);
            for (std::size_t k = 0; k < n; ++k) {
                net().connect({g0 + static_cast<NeuronId>(k), hj, forward[k].weight,
                        forward[k].delay_s, Port::unlabeled});
            }
            // H fires at ψ; the feedback lands on G_k at phase w_k.
            for (std::size_t k = 0; k < n; ++k) {
                net().connect({hj, g0 + static_cast<NeuronId>(k), cp.feedback_gain,
                        cycles_to_delay(w[k] / kTwoPi - psi, period_s_), Port::unlabeled});
            }
            for (std::size_t i = 0; i < m; ++i) {
                if (i != j) {
                    net().connect({hj, h0 + static_cast<NeuronId>(i), inhibition, 0.0,
                            Port::unlabeled});
                }
            }
        }

        CleanupAssembly assembly{g_name, h_name, {}};
        for (const auto &entry : vocab.entries()) {
            assembly.vocabulary.push_back(entry.name);
        }
        result_.cleanups.push_back(std::move(assembly));
        return {g_name, 0};
    }

    const Vocabulary &symbols_;
    const CompileOptions &options_;
    double period_s_;
    CompiledNetwork result_;
    std::map<std::string, View> memo_;
    int counter_ = 0;
};

} // namespace

CompiledNetwork compile(std::span<const ExprPtr> roots, const Vocabulary &symbols,
        const CompileOptions &options, const std::vector<std::string> &labels)
{
    if (!labels.empty() && labels.size() != roots.size()) {
        throw ValidationError("one label per root expected");
    }
    if (!(options.base_frequency_hz > 0.0)) {
        throw ValidationError("base frequency must be positive");
    }
    Compiler compiler(symbols, options);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const View view = compiler.lower(*roots[i]);
        compiler.add_readouts(*roots[i], view, labels.empty() ? "out" + std::to_string(i) : labels[i]);
    }
    return compiler.finish();
}

CompiledNetwork compile(const ExprPtr &root, const Vocabulary &symbols, const CompileOptions &options)
{
    return compile(std::span<const ExprPtr>(&root, 1), symbols, options);
}

NeuronId encode_population(Network &net, const PhasorVector &v, const std::string &name)
{
    Population p;
    p.name = name;
    p.kind = NeuronKind::phasor_source;
    p.size = v.dim();
    p.phases.assign(v.phases().begin(), v.phases().end());
    return net.add_population(std::move(p));
}

std::vector<SynapseCode> phases_to_delays(const PhasorVector &v, double period_s, bool conjugate)
{
    std::vector<SynapseCode> out;
    out.reserve(v.dim());
    for (double phase : v.phases()) {
        const double p = conjugate ? wrap_phase(kTwoPi - phase) : phase;
        out.push_back({1.0, cycles_to_delay(p / kTwoPi, period_s)});
    }
    return out;
}

std::size_t neuron_count(const Network &net)
{
    return net.neuron_count();
}

} // namespace phasor
