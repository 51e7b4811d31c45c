#pragma once

#include <cmath>

#include "ncrl/complex_matrix.hpp"
#include "ncrl/operators.hpp"

namespace ncrl {

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }

    friend BlochVector operator+(const BlochVector& u, const BlochVector& v) {
        return {u.x + v.x, u.y + v.y, u.z + v.z};
    }
    friend BlochVector operator-(const BlochVector& u, const BlochVector& v) {
        return {u.x - v.x, u.y - v.y, u.z - v.z};
    }
    friend BlochVector operator*(double t, const BlochVector& v) {
        return {t * v.x, t * v.y, t * v.z};
    }
};

inline double dot(const BlochVector& u, const BlochVector& v) {
    return u.x * v.x + u.y * v.y + u.z * v.z;
}

inline BlochVector cross(const BlochVector& u, const BlochVector& v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

/// Coefficients of M = (s0 + i s0p) 1 + sum_k (s_k + i sp_k) sigma_k.
/// Hermitian M has s0p = 0 and sp = 0.
struct PauliDecomposition {
    double s0 = 0.0;
    BlochVector s;
    double s0p = 0.0;
    BlochVector sp;
};

/// sigma_k for k in {1,2,3}.
ComplexMatrix pauli_matrix(int k);

ComplexMatrix pauli_compose(const PauliDecomposition& d);
PauliDecomposition pauli_decompose(const ComplexMatrix& m);

/// (1 + sign a.sigma) / 2 for a unit vector a (|a| = 1 within tol).
MinimalProjection projection_from_bloch(const BlochVector& a, int sign, double tol = 1e-10);

/// (1 + s.sigma) / 2; Hermitian for any real s, a density only when |s| <= 1.
HermitianOperator bloch_state(const BlochVector& s);

} // namespace ncrl
