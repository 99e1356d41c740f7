#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace yamabe {

/// Argument outside the domain of a coordinate or geometric map.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A field that must be positive (conformal factors) is not.
class InvalidFieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inconsistent run configuration: mismatched meshes, bad parameters,
/// violated compatibility conditions.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A time step produced a non-positive conformal factor.
class StepFailure : public std::runtime_error {
public:
    StepFailure(std::size_t node, double value, double time)
        : std::runtime_error("non-positive conformal factor u=" + std::to_string(value) +
                             " at node " + std::to_string(node) + " (t=" +
                             std::to_string(time) + ")"),
          node_(node), value_(value), time_(time) {}

    std::size_t node() const noexcept { return node_; }
    double value() const noexcept { return value_; }
    double time() const noexcept { return time_; }

private:
    std::size_t node_;
    double value_;
    double time_;
};

/// Singular or non-finite linear system.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace yamabe
