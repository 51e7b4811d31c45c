#pragma once

#include <cstdint>
#include <vector>

#include "ncrl/complex_matrix.hpp"
#include "ncrl/linalg.hpp"
#include "ncrl/operators.hpp"
#include "ncrl/pauli.hpp"
#include "ncrl/rng.hpp"

namespace ncrl {

/// Point on the unit sphere: theta in [0, pi], phi in [0, 2 pi).
struct SphericalDirection {
    double theta = 0.0;
    double phi = 0.0;

    SphericalDirection() = default;
    SphericalDirection(double theta, double phi);
};

BlochVector to_unit_vector(const SphericalDirection& d);
/// phi of a pole maps to 0.
SphericalDirection from_unit_vector(const BlochVector& v);

/// Band compression strength; r must exceed 1 by more than 1e-8 (r = 1 is
/// the identity map, not a belt).
struct BeltParameters {
    double r;

    explicit BeltParameters(double r);
};

/// acos with the argument clamped into [-1, 1]; beyond 1e-9 outside throws.
double safe_acos(double x);

/// theta' = acos(cos theta / r); phi' = 0 at the north pole, pi at the south
/// pole, phi elsewhere. Image band: theta' in [acos(1/r), pi - acos(1/r)].
SphericalDirection belt_f(const SphericalDirection& a, const BeltParameters& params);

/// Same map in Cartesian coordinates (input must be unit within 1e-10).
BlochVector belt_f_cartesian(const BlochVector& a, const BeltParameters& params);

/// Image of the fixed state: the pole axis stretched to length r.
BlochVector belt_g(const BeltParameters& params);

/// Samples directions, compares 1/2 (1 +- a.z) against Tr(W P(f(a))) with
/// W = (1 + belt_g . sigma)/2; returns the max absolute discrepancy.
double verify_belt_born(const BeltParameters& params, int num_samples, std::uint64_t seed);

/// Angular radius acos(1/r) of the excluded polar caps; asserts on a fixed
/// sample set that no image enters either cap.
double belt_image_gap(const BeltParameters& params);

struct BeltFalsifierPair {
    SphericalDirection a;
    BlochVector s;
    double discrepancy = 0.0;
};

/// Extends the fixed-state image covariantly (g(s) = r s) and searches for a
/// pair (a, s) with |a.s - f(a).g(s)| > 1e-6, always found, because no
/// state-independent direction map preserves all inner products unless it is
/// orthogonal. Throws SearchExhaustedError after 1e5 samples.
BeltFalsifierPair belt_full_content_falsifier(const BeltParameters& params, std::uint64_t seed);

/// Sample of a direction map pair: input and its images under f and g.
struct DirectionMapSample {
    BlochVector input;
    BlochVector f_image;
    BlochVector g_image;
};

struct Lemma1Report {
    bool is_linear_extension = false;
    bool is_orthogonal = false;
    bool g_equals_f = false;
    double biorthogonality_residual = 0.0;
    double linearity_residual = 0.0;
    double orthogonality_residual = 0.0;
    double agreement_residual = 0.0;

    bool all_passed() const { return is_linear_extension && is_orthogonal && g_equals_f; }
};

/// Certifies that sampled maps f, g on the sphere extend to one orthogonal
/// linear map. The first three samples must be an orthonormal basis; at
/// least 100 more follow. Verifies biorthogonality f(e_i).g(e_j) = delta_ij
/// first and throws InputInconsistentError when it fails (no inner-product
/// preserving pair can produce such samples), then checks linearity of f,
/// orthogonality of the extension, and g = f.
Lemma1Report lemma1_verify(const std::vector<DirectionMapSample>& samples, double tol);

/// 3x3 rotation (det +1) from Gram-Schmidt of Gaussian vectors.
RealMatrix random_rotation(SplitMix64& rng);
BlochVector apply3(const RealMatrix& m, const BlochVector& v);

/// Samples for f = g = a seeded random rotation.
std::vector<DirectionMapSample> rotation_lemma1_samples(std::uint64_t seed, int extra_count);
/// Samples for f = belt map, g = covariant extension (g(e) = r e).
std::vector<DirectionMapSample> belt_lemma1_samples(const BeltParameters& params,
                                                    std::uint64_t seed, int extra_count);

/// n^2 minimal projections with their pairwise trace Gram matrix.
struct FrameGram {
    std::vector<MinimalProjection> projections;
    RealMatrix gram;
    double min_eigenvalue = 0.0;
    bool invertible = false;
};

FrameGram lemma2_frame_gram(const std::vector<MinimalProjection>& basis);

/// n^2 random rank-1 projections whose Gram matrix is invertible (retries
/// sub-seeds as needed).
std::vector<MinimalProjection> random_projection_spanning_set(std::uint64_t seed, int n);

struct ProjectionMapSample {
    MinimalProjection input;
    ComplexMatrix f_image;
};

struct Lemma2Report {
    bool is_linear_extension = false;
    bool is_hs_unitary = false;
    bool g_equals_f = false;
    double pairing_residual = 0.0;
    double linearity_residual = 0.0;
    double unitarity_residual = 0.0;
    double agreement_residual = 0.0;

    bool all_passed() const { return is_linear_extension && is_hs_unitary && g_equals_f; }
};

/// Certifies that maps f, g given on a spanning projection basis extend to
/// one Hilbert-Schmidt-unitary superoperator. Refuses to run on a singular
/// Gram (DegenerateSetupError); throws InputInconsistentError when the trace
/// pairing Tr(f(P_i) g(P_j)) = Tr(P_i P_j) fails. Then checks the linear
/// extension against extra samples, HS-unitarity on seeded random pairs via
/// polarization, and the equality of the two extensions.
Lemma2Report lemma2_verify(const std::vector<MinimalProjection>& basis,
                           const std::vector<ComplexMatrix>& f_basis_images,
                           const std::vector<ComplexMatrix>& g_basis_images,
                           const std::vector<ProjectionMapSample>& extra_samples,
                           std::uint64_t seed, double tol);

/// U A U*.
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& a);

} // namespace ncrl
