#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace archinf {

/// Argument outside the mathematical domain of an operation (d not in (0,1), p not in (0,1], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A polynomial denominator vanishes inside or on the closed unit disk.
class RootLocationError : public std::invalid_argument {
public:
    RootLocationError(const std::string& what, double min_modulus)
        : std::invalid_argument(what), min_modulus_(min_modulus) {}

    [[nodiscard]] double min_modulus() const noexcept { return min_modulus_; }

private:
    double min_modulus_;
};

/// A coefficient sequence has a genuinely negative entry.
class NegativityError : public std::invalid_argument {
public:
    NegativityError(const std::string& what, std::size_t index, double value)
        : std::invalid_argument(what), index_(index), value_(value) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    std::size_t index_;
    double value_;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

    [[nodiscard]] double estimate() const noexcept { return estimate_; }
    [[nodiscard]] double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

/// Inputs are well formed but fail an operation's stated precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Simulated variance left the representable range; the parameters are most likely non-stationary.
class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, std::size_t index, double value)
        : std::runtime_error(what), index_(index), value_(value) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    std::size_t index_;
    double value_;
};

/// The moment bound a0^p / (1 - A_p mu_p) does not exist because A_p mu_p >= 1.
class BoundUndefinedError : public std::domain_error {
public:
    BoundUndefinedError(const std::string& what, double contraction)
        : std::domain_error(what), contraction_(contraction) {}

    [[nodiscard]] double contraction() const noexcept { return contraction_; }

private:
    double contraction_;
};

class InsufficientSamplesError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace archinf
