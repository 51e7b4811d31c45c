#include "ncrl/operators.hpp"

#include <cmath>

#include "ncrl/errors.hpp"

namespace ncrl {

HermitianOperator::HermitianOperator(ComplexMatrix m, double tol) : matrix_(std::move(m)) {
    if (matrix_.empty()) throw DimensionMismatchError("HermitianOperator: empty matrix");
    const double defect = matrix_.hermiticity_defect();
    if (!(defect <= tol))
        throw InvariantViolationError("HermitianOperator: hermiticity defect " +
                                      std::to_string(defect) + " exceeds tolerance");
}

MinimalProjection::MinimalProjection(ComplexMatrix m, double tol)
    : op_(std::move(m), tol) {
    const ComplexMatrix& p = op_.matrix();
    const double idem = max_abs_diff(p * p, p);
    if (!(idem <= tol))
        throw InvariantViolationError("MinimalProjection: ||P^2 - P|| = " +
                                      std::to_string(idem) + " exceeds tolerance");
    const double tr = p.trace().real();
    if (!(std::abs(tr - 1.0) <= tol))
        throw InvariantViolationError("MinimalProjection: trace " + std::to_string(tr) +
                                      " not 1 within tolerance");
}

MinimalProjection MinimalProjection::from_unit_vector(const std::vector<Complex>& v, double tol) {
    double norm_sq = 0.0;
    for (const Complex& z : v) norm_sq += std::norm(z);
    if (!(std::abs(std::sqrt(norm_sq) - 1.0) <= tol))
        throw InvariantViolationError("from_unit_vector: vector norm " +
                                      std::to_string(std::sqrt(norm_sq)) + " not 1");
    return MinimalProjection(outer_product(v), tol);
}

double born_probability(const HermitianOperator& w, const MinimalProjection& p) {
    if (w.dim() != p.dim()) throw DimensionMismatchError("born_probability: dims differ");
    if (std::abs(w.real_trace() - 1.0) > 1e-10)
        throw InvariantViolationError("born_probability: Tr(W) != 1");
    const Complex t = trace_inner_product(w.matrix(), p.matrix());
    if (std::abs(t.imag()) > 1e-10)
        throw InvariantViolationError("born_probability: trace has imaginary part " +
                                      std::to_string(t.imag()));
    return t.real();
}

} // namespace ncrl
