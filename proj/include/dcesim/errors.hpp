#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dcesim {

/// Rejected input value. `field` names the offending quantity.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Malformed or contradictory configuration text. `line` is 1-based, 0 if unknown.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A numerical routine failed to converge. Carries the partial result and the
/// achieved error bound so callers can decide whether it is still usable.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, std::complex<double> estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    std::complex<double> estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    std::complex<double> estimate_;
    double error_bound_;
};

/// ODE integration failure. Carries the last accepted state and time.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, std::complex<double> u, std::complex<double> v,
                     double time)
        : std::runtime_error(what + " at t=" + std::to_string(time)), u_(u), v_(v), time_(time) {}

    std::complex<double> u() const noexcept { return u_; }
    std::complex<double> v() const noexcept { return v_; }
    double time() const noexcept { return time_; }

private:
    std::complex<double> u_, v_;
    double time_;
};

} // namespace dcesim
