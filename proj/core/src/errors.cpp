#include "phasor/errors.hpp"

#include <sstream>

namespace phasor {

namespace {

std::string silent_message(const std::string &population, const std::vector<std::size_t> &silent)
{
    std::ostringstream out;
    out << "population '" << population << "' has " << silent.size() << " silent neuron(s):";
    const std::size_t shown = std::min<std::size_t>(silent.size(), 16);
    for (std::size_t i = 0; i < shown; ++i) {
        out << ' ' << silent[i];
    }
    if (shown < silent.size()) {
        out << " ...";
    }
    return out.str();
}

} // namespace

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t actual)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                  std::to_string(actual))
        , expected_(expected)
        , actual_(actual)
{
}

DegenerateBundle::DegenerateBundle(std::size_t component)
        : Error("degenerate bundle: complex sum vanishes at component " + std::to_string(component))
        , component_(component)
{
}

ParseError::ParseError(const std::string &message, std::size_t position)
        : Error("parse error at position " + std::to_string(position) + ": " + message)
        , position_(position)
{
}

SimulationError::SimulationError(const std::string &message, std::uint32_t neuron, double time_s)
        : Error(message + " (neuron " + std::to_string(neuron) + ", t=" + std::to_string(time_s) +
                  " s)")
        , neuron_(neuron)
        , time_s_(time_s)
{
}

ReadoutError::ReadoutError(const std::string &population, std::vector<std::size_t> silent)
        : Error(silent_message(population, silent))
        , silent_(std::move(silent))
{
}

} // namespace phasor
