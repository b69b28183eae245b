#pragma once

#include <stdexcept>
#include <string>

namespace fbheat {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Sizes of two objects that must agree do not (grid lengths, matrix
/// dimensions, band widths).
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// An argument lies outside the mathematical domain of the operation
/// (epsilon outside (0,2), unordered angle arguments, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A stated precondition on the input data is violated (e.g. the right-hand
/// side of the inverse problem is not mean-free).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

/// An iterative numerical process failed to converge or broke down.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

/// A quadrature or discretization could not reach the requested accuracy;
/// the message carries the achieved error estimate.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& msg, double estimate)
        : Error(msg), estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

} // namespace fbheat
