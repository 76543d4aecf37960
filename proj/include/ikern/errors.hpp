#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ikern {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, std::complex<double> partial, double tail)
        : Error(what), partial_(partial), tail_(tail) {}
    std::complex<double> partial() const { return partial_; }
    double tail_estimate() const { return tail_; }

private:
    std::complex<double> partial_;
    double tail_;
};

class PrecisionLossError : public Error {
public:
    PrecisionLossError(const std::string& what, double rel_error)
        : Error(what), rel_error_(rel_error) {}
    double rel_error() const { return rel_error_; }

private:
    double rel_error_;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class UnsupportedRoute : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace ikern
