#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blockade {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, labels or configuration supplied by the caller.
class InputError : public Error {
public:
    using Error::Error;
};

/// A quantity that has no value for the given parameters (e.g. a 0/0 ratio at Omega = 0).
class UndefinedQuantity : public InputError {
public:
    using InputError::InputError;
};

/// An argument violated a documented precondition that callers are expected to guarantee.
class ContractViolation : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class IntegrationFailure : public NumericalError {
public:
    IntegrationFailure(const std::string& what, double time_reached)
        : NumericalError(what), time_reached_(time_reached) {}

    [[nodiscard]] double time_reached() const noexcept { return time_reached_; }

private:
    double time_reached_;
};

/// The Liouvillian kernel is not one-dimensional. Carries the singular values (descending).
class DegenerateSteadyState : public NumericalError {
public:
    DegenerateSteadyState(const std::string& what, std::vector<double> singular_values)
        : NumericalError(what), singular_values_(std::move(singular_values)) {}

    [[nodiscard]] const std::vector<double>& singular_values() const noexcept { return singular_values_; }

private:
    std::vector<double> singular_values_;
};

}  // namespace blockade
