#ifndef HEUN_ERRORS_HPP
#define HEUN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heun {

// A parameter (or a shifted parameter inside a series) sits on a pole of the
// gamma function or on a vanishing recurrence denominator.
struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the contract of an operation (argument range, forbidden
// parameter combination, wrong termination case, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A series hit its term cap without meeting the requested tolerance.
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive integrator step size underflow (approach to a singular point).
struct StepFailure : std::runtime_error {
    explicit StepFailure(const std::string& what) : std::runtime_error(what) {}
};

// Polynomial root iteration failed to settle.
struct RootFailure : std::runtime_error {
    explicit RootFailure(const std::string& what) : std::runtime_error(what) {}
};

// A computed accessory-parameter root did not actually truncate the series.
struct TerminationFailure : std::runtime_error {
    explicit TerminationFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace heun

#endif
