#include "ncrl/random_ops.hpp"

#include <cmath>

#include "ncrl/errors.hpp"

namespace ncrl {

namespace {

void require_dim(int n) {
    if (n < 2) throw DimensionMismatchError("random generator: n must be >= 2");
}

// One modified Gram-Schmidt pass over the columns; returns false on a zero column.
bool orthonormalize_columns(ComplexMatrix& m) {
    const int n = m.dim();
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            Complex proj(0.0, 0.0);
            for (int i = 0; i < n; ++i) proj += std::conj(m.at(i, k)) * m.at(i, j);
            for (int i = 0; i < n; ++i) m.at(i, j) -= proj * m.at(i, k);
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(m.at(i, j));
        norm = std::sqrt(norm);
        if (norm < 1e-12) return false;
        for (int i = 0; i < n; ++i) m.at(i, j) /= norm;
    }
    return true;
}

} // namespace

ComplexMatrix random_complex_gaussian(SplitMix64& rng, int n) {
    require_dim(n);
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    return m;
}

ComplexMatrix random_unitary(SplitMix64& rng, int n) {
    require_dim(n);
    for (;;) {
        ComplexMatrix m = random_complex_gaussian(rng, n);
        if (orthonormalize_columns(m) && orthonormalize_columns(m)) return m;
        // A degenerate Gaussian draw has probability ~0; resample.
    }
}

ComplexMatrix random_unitary(std::uint64_t seed, int n) {
    SplitMix64 rng(seed);
    return random_unitary(rng, n);
}

HermitianOperator random_density(SplitMix64& rng, int n) {
    require_dim(n);
    const ComplexMatrix g = random_complex_gaussian(rng, n);
    ComplexMatrix w = g * g.adjoint();
    // Symmetrize away the last-ulp asymmetry of the product.
    ComplexMatrix sym(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sym.at(i, j) = 0.5 * (w.at(i, j) + std::conj(w.at(j, i)));
    const double tr = sym.trace().real();
    sym *= Complex(1.0 / tr, 0.0);
    return HermitianOperator(std::move(sym));
}

HermitianOperator random_density(std::uint64_t seed, int n) {
    SplitMix64 rng(seed);
    return random_density(rng, n);
}

MinimalProjection random_minimal_projection(SplitMix64& rng, int n) {
    require_dim(n);
    for (;;) {
        std::vector<Complex> v(static_cast<std::size_t>(n));
        double norm_sq = 0.0;
        for (Complex& z : v) {
            z = Complex(rng.next_gaussian(), rng.next_gaussian());
            norm_sq += std::norm(z);
        }
        if (norm_sq < 1e-24) continue;
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (Complex& z : v) z *= inv;
        return MinimalProjection::from_unit_vector(v);
    }
}

MinimalProjection random_minimal_projection(std::uint64_t seed, int n) {
    SplitMix64 rng(seed);
    return random_minimal_projection(rng, n);
}

HermitianOperator random_hermitian(SplitMix64& rng, int n) {
    require_dim(n);
    const std::vector<ComplexMatrix> basis = hermitian_basis(n);
    ComplexMatrix m(n);
    for (const ComplexMatrix& b : basis) {
        const double coeff = rng.next_gaussian();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) += coeff * b.at(i, j);
    }
    return HermitianOperator(std::move(m));
}

ComplexMatrix random_traceless_direction(SplitMix64& rng, int n) {
    require_dim(n);
    const std::vector<ComplexMatrix> basis = hermitian_basis(n);
    for (;;) {
        ComplexMatrix m(n);
        double norm_sq = 0.0;
        // Skip the identity component: the remaining basis spans traceless space.
        for (std::size_t b = 1; b < basis.size(); ++b) {
            const double coeff = rng.next_gaussian();
            norm_sq += coeff * coeff;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m.at(i, j) += coeff * basis[b].at(i, j);
        }
        if (norm_sq < 1e-24) continue;
        m *= Complex(1.0 / std::sqrt(norm_sq), 0.0);
        return m;
    }
}

std::vector<ComplexMatrix> hermitian_basis(int n) {
    if (n < 1) throw DimensionMismatchError("hermitian_basis: n must be >= 1");
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<std::size_t>(n) * n);

    ComplexMatrix id(n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) id.at(i, i) = Complex(inv_sqrt_n, 0.0);
    basis.push_back(std::move(id));

    for (int l = 1; l < n; ++l) {
        ComplexMatrix d(n);
        const double scale = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int m = 0; m < l; ++m) d.at(m, m) = Complex(scale, 0.0);
        d.at(l, l) = Complex(-static_cast<double>(l) * scale, 0.0);
        basis.push_back(std::move(d));
    }

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            ComplexMatrix sym(n);
            sym.at(j, k) = Complex(inv_sqrt2, 0.0);
            sym.at(k, j) = Complex(inv_sqrt2, 0.0);
            basis.push_back(std::move(sym));

            ComplexMatrix asym(n);
            asym.at(j, k) = Complex(0.0, -inv_sqrt2);
            asym.at(k, j) = Complex(0.0, inv_sqrt2);
            basis.push_back(std::move(asym));
        }
    }
    return basis;
}

} // namespace ncrl
