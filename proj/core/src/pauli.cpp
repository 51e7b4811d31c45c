#include "ncrl/pauli.hpp"

#include "ncrl/errors.hpp"

namespace ncrl {

ComplexMatrix pauli_matrix(int k) {
    ComplexMatrix m(2);
    switch (k) {
        case 1:
            m.at(0, 1) = Complex(1.0, 0.0);
            m.at(1, 0) = Complex(1.0, 0.0);
            break;
        case 2:
            m.at(0, 1) = Complex(0.0, -1.0);
            m.at(1, 0) = Complex(0.0, 1.0);
            break;
        case 3:
            m.at(0, 0) = Complex(1.0, 0.0);
            m.at(1, 1) = Complex(-1.0, 0.0);
            break;
        default:
            throw DimensionMismatchError("pauli_matrix: index must be 1, 2 or 3");
    }
    return m;
}

ComplexMatrix pauli_compose(const PauliDecomposition& d) {
    const Complex c0(d.s0, d.s0p);
    const Complex cx(d.s.x, d.sp.x);
    const Complex cy(d.s.y, d.sp.y);
    const Complex cz(d.s.z, d.sp.z);
    ComplexMatrix m(2);
    m.at(0, 0) = c0 + cz;
    m.at(0, 1) = cx - Complex(0.0, 1.0) * cy;
    m.at(1, 0) = cx + Complex(0.0, 1.0) * cy;
    m.at(1, 1) = c0 - cz;
    return m;
}

PauliDecomposition pauli_decompose(const ComplexMatrix& m) {
    if (m.dim() != 2) throw DimensionMismatchError("pauli_decompose: requires dim 2");
    const Complex c0 = 0.5 * (m.at(0, 0) + m.at(1, 1));
    const Complex cz = 0.5 * (m.at(0, 0) - m.at(1, 1));
    const Complex cx = 0.5 * (m.at(0, 1) + m.at(1, 0));
    const Complex cy = 0.5 * Complex(0.0, 1.0) * (m.at(0, 1) - m.at(1, 0));
    PauliDecomposition d;
    d.s0 = c0.real();
    d.s0p = c0.imag();
    d.s = {cx.real(), cy.real(), cz.real()};
    d.sp = {cx.imag(), cy.imag(), cz.imag()};
    return d;
}

MinimalProjection projection_from_bloch(const BlochVector& a, int sign, double tol) {
    if (sign != 1 && sign != -1)
        throw InvariantViolationError("projection_from_bloch: sign must be +1 or -1");
    if (std::abs(a.norm() - 1.0) > tol)
        throw InvariantViolationError("projection_from_bloch: |a| = " + std::to_string(a.norm()) +
                                      " is not 1 within tolerance");
    PauliDecomposition d;
    d.s0 = 0.5;
    d.s = 0.5 * static_cast<double>(sign) * a;
    return MinimalProjection(pauli_compose(d));
}

HermitianOperator bloch_state(const BlochVector& s) {
    PauliDecomposition d;
    d.s0 = 0.5;
    d.s = 0.5 * s;
    return HermitianOperator(pauli_compose(d));
}

} // namespace ncrl
