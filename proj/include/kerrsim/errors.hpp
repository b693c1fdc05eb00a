#pragma once

#include <stdexcept>
#include <string>

namespace kerrsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad dimensions, out-of-range indices, non-Hermitian or non-normalized input.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A numerical routine failed (eigensolver did not converge, non-finite result).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Scenario configuration rejected; the message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Failure while evaluating an observable during a scenario run.
class RunError : public Error {
public:
    RunError(double t, std::string observable, const std::string& what)
        : Error("t=" + std::to_string(t) + " observable=" + observable + ": " + what),
          t_(t), observable_(std::move(observable)) {}

    double t() const noexcept { return t_; }
    const std::string& observable() const noexcept { return observable_; }

private:
    double t_;
    std::string observable_;
};

}  // namespace kerrsim
