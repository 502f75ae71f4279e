#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace phasor {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error
{
public:
    DimensionMismatch(std::size_t expected, std::size_t actual);

    std::size_t expected() const { return expected_; }
    std::size_t actual() const { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

/// A bundled component whose complex sum (nearly) vanished.
class DegenerateBundle : public Error
{
public:
    explicit DegenerateBundle(std::size_t component);

    std::size_t component() const { return component_; }

private:
    std::size_t component_;
};

class ValidationError : public Error
{
public:
    using Error::Error;
};

class ParseError : public Error
{
public:
    ParseError(const std::string &message, std::size_t position);

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class SimulationError : public Error
{
public:
    SimulationError(const std::string &message, std::uint32_t neuron, double time_s);

    std::uint32_t neuron() const { return neuron_; }
    double time_s() const { return time_s_; }

private:
    std::uint32_t neuron_;
    double time_s_;
};

/// Raised when a population cannot be read out as a vector.
class ReadoutError : public Error
{
public:
    ReadoutError(const std::string &population, std::vector<std::size_t> silent);

    const std::vector<std::size_t> &silent() const { return silent_; }

private:
    std::vector<std::size_t> silent_;
};

} // namespace phasor
