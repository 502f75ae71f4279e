#include "phasor/neuron_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phasor/errors.hpp"
#include "phasor/phase.hpp"

namespace phasor {

double next_clock_time(double t, double phase_cycles, bool strict)
{
    double candidate = std::floor(t) + phase_cycles;
    if (candidate < t || (strict && candidate == t)) {
        candidate += 1.0;
    }
    return candidate;
}

// ---------------------------------------------------------------- source

double PhasorSource::next_event(double) const
{
    return next_;
}

// ------------------------------------------------------------------- sum

void PhaseSum::integrate(double dt)
{
    if (counting_) {
        *counting_ -= dt;
    }
}

Outcome PhaseSum::receive(double t, const Input &)
{
    if (!held_) {
        // First spike of a computation: q <- p, where p is the cycle
        // integrator.
        held_ = cycle_fraction(t);
        return {};
    }
    if (counting_) {
        // A second countdown would start before the previous one fired.
        held_.reset();
        return {false, "phase_sum: third spike within one computation window"};
    }
    counting_ = *held_;
    held_.reset();
    if (*counting_ <= 0.0) {
        counting_.reset();
        return {true, nullptr};
    }
    return {};
}

double PhaseSum::next_event(double t) const
{
    return counting_ ? t + std::max(*counting_, 0.0) : kNever;
}

bool PhaseSum::finite() const
{
    return (!held_ || std::isfinite(*held_)) && (!counting_ || std::isfinite(*counting_));
}

// ------------------------------------------------------------------- sub

void PhaseSub::integrate(double dt)
{
    if (p_) {
        *p_ += dt;
    }
}

Outcome PhaseSub::receive(double t, const Input &in)
{
    if (in.port == Port::b) {
        p_ = 0.0;
        return {};
    }
    if (!p_) {
        return {}; // no `b` spike seen yet
    }
    const double theta = cycle_fraction(*p_);
    const double q = cycle_fraction(t);
    const char *anomaly = pending_ ? "phase_sub: new threshold before previous spike" : nullptr;
    if (theta == q) {
        pending_.reset();
        return {true, anomaly};
    }
    // q resets at every cycle start, so if it is already past θ the spike
    // waits for the next cycle.
    pending_ = t + cycle_fraction(theta - q);
    return {false, anomaly};
}

double PhaseSub::next_event(double) const
{
    return pending_ ? *pending_ : kNever;
}

bool PhaseSub::finite() const
{
    return (!p_ || std::isfinite(*p_)) && (!pending_ || std::isfinite(*pending_));
}

// ------------------------------------------------------------------ mult

Outcome PhaseMult::receive(double t, const Input &)
{
    // Centered cycle integrator in (−½, ½], matching the (−π, π] reading
    // of the input phase.
    double x_hat = cycle_fraction(t);
    if (x_hat > 0.5) {
        x_hat -= 1.0;
    }
    const double theta = alpha_ * x_hat;
    // p̂ runs with x̂, so it next equals θ (mod 1) after this much time.
    const double wait = cycle_fraction(theta - x_hat);
    const char *anomaly = pending_ ? "phase_mult: new threshold before previous spike" : nullptr;
    if (wait == 0.0) {
        pending_.reset();
        return {true, anomaly};
    }
    pending_ = t + wait;
    return {false, anomaly};
}

double PhaseMult::next_event(double) const
{
    return pending_ ? *pending_ : kNever;
}

// ------------------------------------------------------------------- avg

void PhaseAvg::integrate(double dt)
{
    for (auto &timer : timer_) {
        if (timer) {
            *timer += dt;
        }
    }
}

Outcome PhaseAvg::receive(double, const Input &in)
{
    const int slot = in.slot == 0 ? 0 : 1;
    timer_[slot] = 0.0;
    armed_ = true;
    if (!ready()) {
        return {};
    }
    const double separation = cycle_fraction(*timer_[1 - slot]);
    if (std::abs(separation - 0.5) < antipodal_tolerance) {
        armed_ = false;
        return {false, "phase_avg: antipodal inputs"};
    }
    const double sum = *timer_[0] + *timer_[1];
    if (sum >= 1.0 && std::min(*timer_[0], *timer_[1]) <= 0.25) {
        armed_ = false;
        return {true, nullptr};
    }
    return {};
}

double PhaseAvg::next_event(double t) const
{
    if (!armed_ || !ready()) {
        return kNever;
    }
    const double sum = *timer_[0] + *timer_[1];
    const double youngest = std::min(*timer_[0], *timer_[1]);
    // Both timers rise with unit slope, so p + q reaches 1 after (1 − s)/2.
    const double wait = std::max(0.0, (1.0 - sum) / 2.0);
    if (youngest + wait > 0.25) {
        return kNever;
    }
    return t + wait;
}

bool PhaseAvg::finite() const
{
    return std::all_of(std::begin(timer_), std::end(timer_),
            [](const auto &timer) { return !timer || std::isfinite(*timer); });
}

// -------------------------------------------------------- resonate-fire

ResonateFire::ResonateFire(const ResonateFireParams &params, double base_frequency_hz)
    : decay_(params.decay_per_s / base_frequency_hz),
      threshold_(params.threshold),
      saturation_(params.saturation),
      fixed_phase_(params.timing == SpikeTiming::fixed_phase),
      fire_phase_(cycle_fraction(wrap_phase(params.fire_phase_rad) / kTwoPi)),
      refractory_(params.refractory_cycles)
{
}

void ResonateFire::integrate(double dt)
{
    if (decay_ > 0.0 && dt > 0.0) {
        const double k = std::exp(-decay_ * dt);
        a_ *= k;
        inhibition_ *= k;
    }
}

Outcome ResonateFire::receive(double t, const Input &in)
{
    if (in.weight < 0.0) {
        inhibition_ -= in.weight;
        return {};
    }
    a_ += std::polar(in.weight, kTwoPi * cycle_fraction(t));
    const double magnitude = std::abs(a_);
    if (magnitude > saturation_) {
        a_ *= saturation_ / magnitude;
    }
    return {};
}

double ResonateFire::next_event(double t) const
{
    const double magnitude = std::abs(a_);
    if (magnitude - inhibition_ < threshold_ || magnitude == 0.0) {
        return kNever;
    }
    const double phase =
            fixed_phase_ ? fire_phase_ : cycle_fraction(wrap_phase(std::arg(a_)) / kTwoPi);
    // A peak that coincides with the current time up to rounding is due
    // now; without the tolerance a kick landing on its own peak would
    // randomly fire now or a cycle later.
    double when = std::max(next_clock_time(t - kPeakTolerance, phase, false), t);
    while (when < refractory_until_) {
        when += 1.0;
    }
    // Amplitude and deficit decay together, so the margin only shrinks.
    const double effective = (magnitude - inhibition_) * std::exp(-decay_ * (when - t));
    return effective >= threshold_ ? when : kNever;
}

bool ResonateFire::finite() const
{
    return std::isfinite(a_.real()) && std::isfinite(a_.imag()) && std::isfinite(inhibition_);
}

// --------------------------------------------------------------- factory

NeuronModel make_model(const Population &pop, std::size_t index, double base_frequency_hz)
{
    switch (pop.kind) {
    case NeuronKind::phasor_source:
        return PhasorSource(cycle_fraction(wrap_phase(pop.phases.at(index)) / kTwoPi));
    case NeuronKind::phase_sum:
        return PhaseSum{};
    case NeuronKind::phase_sub:
        return PhaseSub{};
    case NeuronKind::phase_mult:
        return PhaseMult(pop.alpha);
    case NeuronKind::phase_avg:
        return PhaseAvg{};
    case NeuronKind::relay:
        return Relay{};
    case NeuronKind::resonate_fire:
        return ResonateFire(pop.rf, base_frequency_hz);
    }
    throw ValidationError("unknown neuron kind");
}

} // namespace phasor
