// errors.hpp — exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

// Invalid physical parameter or run configuration. Carries the offending key
// so the CLI can report it in a machine-parsable way.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& message)
        : std::invalid_argument(message), key_(std::move(key)) {}

    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Numerical failure inside a propagator (norm/trace drift beyond the guard,
// Fock-cutoff leakage, no step-size convergence, degenerate spectrum).
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& message, double time_of_failure)
        : std::runtime_error(message), time_(time_of_failure) {}

    double time() const { return time_; }

private:
    double time_;
};

}  // namespace dicke
