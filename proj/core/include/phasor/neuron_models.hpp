#pragma once

// Integrator neuron models. All times are in cycles of the global clock
// (t / T), so the clock phase at time t is 2π·frac(t). Each model keeps
// the integrators that carry state between events; clock-derived
// integrators (the ones that reset at every cycle start) are read off
// frac(t) directly.
//
// Common interface:
//   integrate(dt)      advance integrators by their slopes over dt cycles
//   receive(t, input)  apply an input spike at time t (state already at t)
//   next_event(t)      earliest time >= t at which the model spikes if no
//                      further input arrives, or +inf
//   fire(t)            the engine emitted the model's spike at t
//   finite()           false if any state variable went non-finite

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <variant>

#include "phasor/network.hpp"

namespace phasor {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

struct Input
{
    double weight = 1.0;
    Port port = Port::unlabeled;
    int slot = 0; // inbound index, used by the two-input averaging model
};

struct Outcome
{
    bool fire = false;
    const char *anomaly = nullptr;
};

/// Fires once per cycle at a fixed phase.
class PhasorSource
{
public:
    explicit PhasorSource(double phase_cycles) : next_(phase_cycles) {}

    void integrate(double) {}
    Outcome receive(double, const Input &) { return {}; }
    double next_event(double t) const;
    void fire(double) { next_ += 1.0; }
    bool finite() const { return true; }

private:
    double next_;
};

/// Phase addition with the p/q timer pair: the first arrival latches the
/// cycle integrator p into q, the second starts q counting down, and the
/// spike is emitted when q reaches zero.
class PhaseSum
{
public:
    void integrate(double dt);
    Outcome receive(double t, const Input &in);
    double next_event(double t) const;
    void fire(double) { counting_.reset(); }
    bool finite() const;

private:
    std::optional<double> held_;
    std::optional<double> counting_;
};

/// Phase subtraction: p times the interval since the last `b` spike, an
/// `a` spike latches it into θ, and the neuron fires when the cycle
/// integrator q reaches θ.
class PhaseSub
{
public:
    void integrate(double dt);
    Outcome receive(double t, const Input &in);
    double next_event(double t) const;
    void fire(double) { pending_.reset(); }
    bool finite() const;

private:
    std::optional<double> p_;
    std::optional<double> pending_;
};

/// Phase multiplication on the centered cycle: θ = α·x̂ at the input
/// spike, and the neuron fires when the centered integrator p̂ reaches θ.
class PhaseMult
{
public:
    explicit PhaseMult(double alpha) : alpha_(alpha) {}

    void integrate(double) {}
    Outcome receive(double t, const Input &in);
    double next_event(double t) const;
    void fire(double) { pending_.reset(); }
    bool finite() const { return !pending_ || std::isfinite(*pending_); }

private:
    double alpha_;
    std::optional<double> pending_;
};

/// Two-input phase averaging. Each input restarts its own timer; the
/// neuron fires when p + q >= 1 while the younger timer is at most ¼.
class PhaseAvg
{
public:
    void integrate(double dt);
    Outcome receive(double t, const Input &in);
    double next_event(double t) const;
    void fire(double) { armed_ = false; }
    bool finite() const;

    /// Separation from π (in cycles) below which inputs count as antipodal.
    static constexpr double antipodal_tolerance = 1e-6 / (2.0 * 3.141592653589793);

private:
    bool ready() const { return timer_[0].has_value() && timer_[1].has_value(); }

    std::optional<double> timer_[2];
    bool armed_ = false;
};

/// Spikes as soon as any input arrives.
class Relay
{
public:
    void integrate(double) {}
    Outcome receive(double, const Input &) { return {true, nullptr}; }
    double next_event(double) const { return kNever; }
    void fire(double) {}
    bool finite() const { return true; }
};

/// Damped resonator at the base frequency, kept as a complex amplitude A
/// in the frame rotating with the clock. An excitatory spike at time t
/// adds w·e^{i2πt} to A; inhibitory spikes add to a deficit I that decays
/// with A. The neuron fires when the effective amplitude |A| − I is at
/// least the threshold, at the next oscillator peak (clock phase = arg A)
/// or at a fixed clock phase, then stays refractory for most of a cycle. A
/// kick that leaves the peak at the current phase fires immediately.
class ResonateFire
{
public:
    ResonateFire(const ResonateFireParams &params, double base_frequency_hz);

    void integrate(double dt);
    Outcome receive(double t, const Input &in);
    double next_event(double t) const;
    void fire(double t) { refractory_until_ = t + refractory_; }
    bool finite() const;

    std::complex<double> amplitude() const { return a_; }
    /// Peaks this close (in cycles) to the current time count as now.
    static constexpr double kPeakTolerance = 1e-9;
    double inhibition() const { return inhibition_; }

private:
    double decay_;      // per cycle
    double threshold_;
    double saturation_;
    bool fixed_phase_;
    double fire_phase_; // cycles
    double refractory_; // cycles
    std::complex<double> a_{0.0, 0.0};
    double inhibition_ = 0.0;
    double refractory_until_ = -kNever;
};

using NeuronModel =
        std::variant<PhasorSource, PhaseSum, PhaseSub, PhaseMult, PhaseAvg, Relay, ResonateFire>;

/// Fresh model for neuron `index` of a population.
NeuronModel make_model(const Population &pop, std::size_t index, double base_frequency_hz);

/// Smallest time >= t (or > t when `strict`) whose clock phase is
/// `phase_cycles`.
double next_clock_time(double t, double phase_cycles, bool strict);

} // namespace phasor
