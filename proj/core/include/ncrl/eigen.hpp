#pragma once

#include <vector>

#include "ncrl/complex_matrix.hpp"
#include "ncrl/operators.hpp"

namespace ncrl {

/// Raw eigendecomposition: values ascending, unit eigenvectors in the
/// matching columns of `vectors`.
struct EigenSystem {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Eigenvalue with its spectral projection; degenerate values merged.
struct EigenPair {
    double eigenvalue = 0.0;
    int multiplicity = 0;
    HermitianOperator projection;
};

/// Cyclic Jacobi on a Hermitian matrix (hermiticity defect must be <= 1e-12).
/// Converges quadratically at the dimensions used here (<= ~20).
EigenSystem eigen_system(const ComplexMatrix& a);

/// Spectral decomposition with eigenvalues ascending. Values closer than
/// cluster_tol are merged into one projection of higher rank, so the
/// reconstruction sum stays accurate near degeneracies.
std::vector<EigenPair> eigen_hermitian(const HermitianOperator& a, double cluster_tol = 1e-8);

double min_eigenvalue(const HermitianOperator& a);
double min_eigenvalue(const ComplexMatrix& a);

/// True iff min eigenvalue >= -tol.
bool is_psd(const HermitianOperator& a, double tol = 1e-10);

/// True iff is_psd and |Tr(A) - 1| <= tol.
bool is_density(const HermitianOperator& a, double tol = 1e-10);

} // namespace ncrl
