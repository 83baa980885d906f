#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairprox {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NonFinite : public Error {
public:
    using Error::Error;
};

/// An LU pivot fell below the relative singularity threshold.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

class NotSymmetric : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The hypothesis of a kernel construction fails; carries a direction proving it.
class HypothesisViolated : public Error {
public:
    HypothesisViolated(const std::string& what, std::vector<double> witness, double value)
        : Error(what), witness_(std::move(witness)), value_(value) {}

    [[nodiscard]] const std::vector<double>& witness() const noexcept { return witness_; }
    /// Value of the violated quadratic form at the witness.
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    std::vector<double> witness_;
    double value_;
};

class InnerSingular : public Error {
public:
    using Error::Error;
};

class InnerNoConvergence : public Error {
public:
    using Error::Error;
};

/// The warped resolvent could not be evaluated at outer iteration `iteration()`.
class ResolventFailure : public Error {
public:
    ResolventFailure(const std::string& what, std::size_t iteration)
        : Error(what), iteration_(iteration) {}

    [[nodiscard]] std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

class ScheduleInvalid : public Error {
public:
    using Error::Error;
};

/// Jacobian not invertible at iterate `iteration()` (or at the reference point).
class SingularJacobian : public Error {
public:
    SingularJacobian(const std::string& what, std::size_t iteration)
        : Error(what), iteration_(iteration) {}

    [[nodiscard]] std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

class LeftNeighborhood : public Error {
public:
    using Error::Error;
};

class MissingReference : public Error {
public:
    using Error::Error;
};

class NonPositive : public Error {
public:
    using Error::Error;
};

}  // namespace pairprox
