#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlslab {

// Error taxonomy. Callers can catch the base std:: types; the subclasses
// carry the diagnostic payload the reporting layer prints.

// Violated argument precondition (wrong dimension, bad order, ...).
struct ArgumentError : std::invalid_argument {
    explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Too few points to perform the requested operation.
struct InsufficientDataError : std::runtime_error {
    std::size_t neighbor_count;
    InsufficientDataError(const std::string& msg, std::size_t count)
        : std::runtime_error(msg), neighbor_count(count) {}
};

// Normal equations (or frame covariance) numerically rank deficient.
struct IllConditionedError : std::runtime_error {
    double lambda_min;
    std::size_t neighbor_count;
    IllConditionedError(const std::string& msg, double lmin, std::size_t count)
        : std::runtime_error(msg), lambda_min(lmin), neighbor_count(count) {}
};

// Constraint set of an optimization problem is empty.
struct FeasibilityError : std::runtime_error {
    explicit FeasibilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iteration budget exhausted before reaching tolerance.
struct ConvergenceError : std::runtime_error {
    double last_residual;
    ConvergenceError(const std::string& msg, double residual)
        : std::runtime_error(msg), last_residual(residual) {}
};

// Invalid or inconsistent run configuration (maps to exit code 2 in the CLI).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem/serialization failure.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mlslab
