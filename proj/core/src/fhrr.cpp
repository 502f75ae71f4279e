#include "phasor/fhrr.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "phasor/errors.hpp"
#include "phasor/phase.hpp"
#include "phasor/vocabulary.hpp"

namespace phasor {

namespace {

void require_same_dim(const PhasorVector &u, const PhasorVector &v)
{
    if (u.dim() != v.dim()) {
        throw DimensionMismatch(u.dim(), v.dim());
    }
}

template <typename Op>
PhasorVector zip_phases(const PhasorVector &u, const PhasorVector &v, Op op)
{
    require_same_dim(u, v);
    std::vector<double> out(u.dim());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = op(u[k], v[k]);
    }
    return PhasorVector(std::move(out));
}

} // namespace

PhasorVector::PhasorVector(std::vector<double> phases) : phases_(std::move(phases))
{
    if (phases_.empty()) {
        throw ValidationError("phasor vector must have dimension >= 1");
    }
    for (double &p : phases_) {
        if (!std::isfinite(p)) {
            throw ValidationError("phasor vector has a non-finite phase");
        }
        p = wrap_phase(p);
    }
}

PhasorVector::PhasorVector(std::initializer_list<double> phases)
        : PhasorVector(std::vector<double>(phases))
{
}

PhasorVector PhasorVector::identity(std::size_t dim)
{
    return constant(dim, 0.0);
}

PhasorVector PhasorVector::constant(std::size_t dim, double phase)
{
    return PhasorVector(std::vector<double>(dim, phase));
}

PhasorVector random_vector(std::size_t dim, std::uint64_t seed)
{
    if (dim == 0) {
        throw ValidationError("random_vector: dim must be >= 1");
    }
    // Top 53 bits of mt19937_64 mapped to [0, 1): reproducible across
    // standard libraries, unlike uniform_real_distribution.
    std::mt19937_64 gen(seed);
    std::vector<double> phases(dim);
    for (double &p : phases) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        p = u * kTwoPi;
    }
    return PhasorVector(std::move(phases));
}

PhasorVector bind(const PhasorVector &u, const PhasorVector &v)
{
    return zip_phases(u, v, [](double a, double b) { return a + b; });
}

PhasorVector unbind(const PhasorVector &w, const PhasorVector &v)
{
    return zip_phases(w, v, [](double a, double b) { return a - b; });
}

PhasorVector bundle(std::span<const PhasorVector> vs, double tolerance)
{
    if (vs.empty()) {
        throw ValidationError("bundle: at least one vector required");
    }
    const std::size_t dim = vs.front().dim();
    for (const auto &v : vs) {
        require_same_dim(vs.front(), v);
    }
    std::vector<double> out(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        std::complex<double> sum{0.0, 0.0};
        for (const auto &v : vs) {
            sum += std::polar(1.0, v[k]);
        }
        if (std::abs(sum) < tolerance) {
            throw DegenerateBundle(k);
        }
        out[k] = std::arg(sum);
    }
    return PhasorVector(std::move(out));
}

PhasorVector bundle(std::initializer_list<PhasorVector> vs)
{
    return bundle(std::span<const PhasorVector>(vs.begin(), vs.size()));
}

PhasorVector permute(const PhasorVector &v, long shift)
{
    const auto n = static_cast<long>(v.dim());
    std::vector<double> out(v.dim());
    for (long k = 0; k < n; ++k) {
        long src = (k + shift) % n;
        if (src < 0) {
            src += n;
        }
        out[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(src)];
    }
    return PhasorVector(std::move(out));
}

PhasorVector fractional_power(const PhasorVector &v, double alpha)
{
    std::vector<double> out(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) {
        out[k] = center_phase(v[k]) * alpha;
    }
    return PhasorVector(std::move(out));
}

double similarity(const PhasorVector &u, const PhasorVector &v)
{
    require_same_dim(u, v);
    double sum = 0.0;
    for (std::size_t k = 0; k < u.dim(); ++k) {
        sum += std::cos(u[k] - v[k]);
    }
    return sum / static_cast<double>(u.dim());
}

PhasorVector conjugate(const PhasorVector &v)
{
    std::vector<double> out(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) {
        out[k] = -v[k];
    }
    return PhasorVector(std::move(out));
}

double max_phase_deviation(const PhasorVector &u, const PhasorVector &v)
{
    require_same_dim(u, v);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.dim(); ++k) {
        worst = std::max(worst, phase_distance(u[k], v[k]));
    }
    return worst;
}

CleanupResult cleanup_oracle(const PhasorVector &v, const Vocabulary &vocab)
{
    if (vocab.empty()) {
        throw ValidationError("cleanup: empty vocabulary");
    }
    CleanupResult best;
    bool first = true;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        const double s = similarity(v, vocab[i].vector);
        if (first || s > best.similarity) {
            best = {vocab[i].name, i, s};
            first = false;
        }
    }
    return best;
}

} // namespace phasor
