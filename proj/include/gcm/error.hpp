#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcm {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidState : public Error {
public:
    using Error::Error;
};

/// Evaluation requested at a point where the quadrature is not valid.
class DomainError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    using Error::Error;
};

/// An iterative solve stopped without reaching its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double final_residual,
                     std::vector<double> history = {})
        : Error(what + " (final relative residual " + format_residual(final_residual) + ")"),
          final_residual_(final_residual), history_(std::move(history)) {}

    double final_residual() const noexcept { return final_residual_; }
    const std::vector<double>& history() const noexcept { return history_; }

private:
    static std::string format_residual(double r) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", r);
        return buf;
    }
    double final_residual_;
    std::vector<double> history_;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class UnitError : public Error {
public:
    using Error::Error;
};

class BandNotFound : public Error {
public:
    using Error::Error;
};

/// The total field vanished somewhere, so its logarithmic derivative is undefined.
class VanishingField : public Error {
public:
    using Error::Error;
};

class DivisionGuard : public Error {
public:
    using Error::Error;
};

} // namespace gcm
