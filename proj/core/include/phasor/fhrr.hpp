#pragma once

// Exact complex-vector FHRR algebra. Vectors are unit-modulus, so only the
// phase of each component is stored. This is both the encoding front-end and
// the reference every spiking computation is checked against.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace phasor {

class Vocabulary;

class PhasorVector
{
public:
    PhasorVector() = default;
    /// Phases are canonicalized into [0, 2π). Throws ValidationError if empty
    /// or non-finite.
    explicit PhasorVector(std::vector<double> phases);
    PhasorVector(std::initializer_list<double> phases);

    /// All-zero (identity) vector.
    static PhasorVector identity(std::size_t dim);
    /// Every component set to the same phase.
    static PhasorVector constant(std::size_t dim, double phase);

    std::size_t dim() const { return phases_.size(); }
    bool empty() const { return phases_.empty(); }
    double operator[](std::size_t k) const { return phases_[k]; }
    std::span<const double> phases() const { return phases_; }

    friend bool operator==(const PhasorVector &, const PhasorVector &) = default;

private:
    std::vector<double> phases_;
};

/// I.i.d. uniform phases on [0, 2π) from a seeded generator; identical
/// (dim, seed) always gives the identical vector.
PhasorVector random_vector(std::size_t dim, std::uint64_t seed);

PhasorVector bind(const PhasorVector &u, const PhasorVector &v);
PhasorVector unbind(const PhasorVector &w, const PhasorVector &v);

/// Phase of the complex sum, per component. Throws DegenerateBundle when a
/// component's sum has modulus below `tolerance`.
PhasorVector bundle(std::span<const PhasorVector> vs, double tolerance = 1e-9);
PhasorVector bundle(std::initializer_list<PhasorVector> vs);

/// result_k = v_{(k + shift) mod N}
PhasorVector permute(const PhasorVector &v, long shift);

/// Scales each centered phase (−π, π] by alpha.
PhasorVector fractional_power(const PhasorVector &v, double alpha);

/// Re((1/N) Σ e^{i(u_k − v_k)}); self-similarity is exactly 1.
double similarity(const PhasorVector &u, const PhasorVector &v);

/// Elementwise conjugate, i.e. the binding inverse.
PhasorVector conjugate(const PhasorVector &v);

/// Largest circular distance between corresponding components.
double max_phase_deviation(const PhasorVector &u, const PhasorVector &v);

struct CleanupResult
{
    std::string name;
    std::size_t index = 0;
    double similarity = 0.0;
};

/// Nearest vocabulary entry by similarity; ties go to the lowest index.
CleanupResult cleanup_oracle(const PhasorVector &v, const Vocabulary &vocab);

} // namespace phasor
