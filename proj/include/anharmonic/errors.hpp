#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anharmonic {

/// Argument outside the mathematical domain of a function (z <= 0 for log_gamma, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Potential parameters that admit no bound ground state.
class BoundStateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fock expansion whose discarded tail mass exceeds the requested bound.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double tail_mass)
        : std::runtime_error(what), tail_mass_(tail_mass) {}

    double tail_mass() const noexcept { return tail_mass_; }

private:
    double tail_mass_;
};

/// An iterative numerical method ran out of budget before meeting its tolerance.
/// Carries the best value reached so the caller can decide what to do with it.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double best_value, double error_estimate)
        : std::runtime_error(what), best_value_(best_value), error_estimate_(error_estimate) {}

    double best_value() const noexcept { return best_value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_value_;
    double error_estimate_;
};

}  // namespace anharmonic
