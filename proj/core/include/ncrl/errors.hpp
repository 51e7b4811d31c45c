#pragma once

#include <stdexcept>
#include <string>

namespace ncrl {

/// Shapes or dimensions of two operands do not match.
class DimensionMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A matrix failed a structural invariant at construction (hermiticity,
/// idempotency, unit trace, unit norm, ...).
class InvariantViolationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Measurement directions are (numerically) linearly dependent.
class DegenerateSetupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A frame does not span enough of Hermitian space to fix the state.
class UnderdeterminedFrameError : public std::runtime_error {
public:
    UnderdeterminedFrameError(const std::string& what, int rank_found)
        : std::runtime_error(what), rank_found(rank_found) {}
    int rank_found;
};

/// A probability table is not generated by any operator over the frame.
class InconsistentTableError : public std::runtime_error {
public:
    InconsistentTableError(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

/// A sampling search ran out of candidates before meeting its target.
class SearchExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Supplied map samples cannot come from an inner-product-preserving pair.
class InputInconsistentError : public std::runtime_error {
public:
    InputInconsistentError(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

/// Malformed file or schema violation; message carries the field/row.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ncrl
