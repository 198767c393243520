#pragma once

#include <stdexcept>
#include <string>

namespace invosc {

// Evaluation outside a profile's time domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Invalid construction parameters (profiles, reference data, configs).
class ConstructionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The reference vacuum cannot be built (non-positive frequency squared).
class InitializationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wronskian drift above the hard limit during mode integration.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

// A numerical consistency check failed (unitarity, Hermiticity, normalization).
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A scenario config field is missing or invalid.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& reason)
        : std::invalid_argument(field + ": " + reason), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace invosc
