#pragma once

#include <cmath>
#include <numbers>

namespace phasor {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Canonical representative of an angle in [0, 2π).
inline double wrap_phase(double radians)
{
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

/// Centered representative of an angle in (−π, π].
inline double center_phase(double radians)
{
    const double r = wrap_phase(radians);
    return r > std::numbers::pi ? r - kTwoPi : r;
}

/// Absolute circular distance between two angles, in [0, π].
inline double phase_distance(double a, double b)
{
    const double d = wrap_phase(a - b);
    return d > std::numbers::pi ? kTwoPi - d : d;
}

/// Fractional part of a time measured in cycles, in [0, 1).
inline double cycle_fraction(double cycles)
{
    double f = cycles - std::floor(cycles);
    if (f >= 1.0) {
        f = 0.0;
    }
    return f;
}

} // namespace phasor
