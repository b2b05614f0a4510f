#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sca {

/// Mismatched operand sizes (vector/matrix orders).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input violates a domain precondition (negative entries, bad permutation, k out of range, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Balancing precondition failed: matrix is not fully indecomposable.
class SupportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative method hit its iteration cap before reaching tolerance.
/// Carries the residual history so callers can inspect the stall.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, std::vector<double> residuals)
        : std::runtime_error(msg), residual_history(std::move(residuals)) {}
    std::vector<double> residual_history;
};

/// A search loop exhausted its budget without a qualifying result.
class ExhaustionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text/CSV input could not be parsed; line/column are 1-based (0 = unknown).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(msg), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

/// Requested more clusters than distinct values available for gap splitting.
class DegeneratePartitionError : public std::runtime_error {
public:
    DegeneratePartitionError(const std::string& msg, double value)
        : std::runtime_error(msg), colliding_value(value) {}
    double colliding_value;
};

/// Linear solve met a pivot below the singularity threshold.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sca
