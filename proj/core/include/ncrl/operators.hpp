#pragma once

#include <vector>

#include "ncrl/complex_matrix.hpp"

namespace ncrl {

/// Self-adjoint operator. Construction enforces ||A - A*||_max <= 1e-12 and
/// stores the matrix as given (no symmetrization, so callers see their own
/// rounding).
class HermitianOperator {
public:
    explicit HermitianOperator(ComplexMatrix m, double tol = 1e-12);

    int dim() const { return matrix_.dim(); }
    const ComplexMatrix& matrix() const { return matrix_; }
    double real_trace() const { return matrix_.trace().real(); }

private:
    ComplexMatrix matrix_;
};

/// Rank-1 orthogonal projection: Hermitian, idempotent, trace 1.
/// Tolerance for idempotency and trace is 1e-10.
class MinimalProjection {
public:
    explicit MinimalProjection(ComplexMatrix m, double tol = 1e-10);

    /// Builds v v* from a unit vector (norm within 1e-10 of 1).
    static MinimalProjection from_unit_vector(const std::vector<Complex>& v, double tol = 1e-10);

    int dim() const { return op_.dim(); }
    const ComplexMatrix& matrix() const { return op_.matrix(); }
    const HermitianOperator& hermitian() const { return op_; }

private:
    HermitianOperator op_;
};

/// Outcome probability Tr(W P). Requires Tr(W) = 1 within 1e-10; an imaginary
/// part of Tr(W P) above 1e-10 means W was malformed and throws.
double born_probability(const HermitianOperator& w, const MinimalProjection& p);

} // namespace ncrl
