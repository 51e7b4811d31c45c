#pragma once

#include <cstdint>
#include <vector>

#include "ncrl/complex_matrix.hpp"
#include "ncrl/operators.hpp"
#include "ncrl/rng.hpp"

namespace ncrl {

/// Entries i.i.d. standard complex Gaussian.
ComplexMatrix random_complex_gaussian(SplitMix64& rng, int n);

/// Haar-distributed unitary: twice-orthogonalized Gram-Schmidt QR of a complex
/// Gaussian matrix; dividing by the (positive real) column norms fixes the
/// phase convention. U* U = 1 within 1e-10.
ComplexMatrix random_unitary(SplitMix64& rng, int n);
ComplexMatrix random_unitary(std::uint64_t seed, int n);

/// G G* / Tr(G G*) for Gaussian G: PSD with unit trace by construction.
HermitianOperator random_density(SplitMix64& rng, int n);
HermitianOperator random_density(std::uint64_t seed, int n);

/// v v* for a normalized Gaussian vector v.
MinimalProjection random_minimal_projection(SplitMix64& rng, int n);
MinimalProjection random_minimal_projection(std::uint64_t seed, int n);

/// GUE-style Hermitian matrix (Gaussian coefficients over the orthonormal
/// Hermitian basis).
HermitianOperator random_hermitian(SplitMix64& rng, int n);

/// Traceless Hermitian direction with unit Hilbert-Schmidt norm.
ComplexMatrix random_traceless_direction(SplitMix64& rng, int n);

/// Orthonormal basis of the real space of n x n Hermitian matrices under the
/// trace inner product, n^2 elements, fixed documented order:
///   [0]            identity / sqrt(n)
///   [1 .. n-1]     diagonal D_l = (sum_{m<l} E_mm - l E_ll) / sqrt(l(l+1))
///   then per index pair (j,k), j<k, lexicographic by (j,k):
///                  (E_jk + E_kj)/sqrt(2), then (-i E_jk + i E_kj)/sqrt(2)
std::vector<ComplexMatrix> hermitian_basis(int n);

} // namespace ncrl
