#pragma once

#include <cstdint>
#include <vector>

#include "ncrl/complex_matrix.hpp"
#include "ncrl/operators.hpp"

namespace ncrl {

/// k projective measurements on C^n, each a complete orthogonal family of n
/// rank-1 projections (pairwise traces <= 1e-10, sum = identity within 1e-10).
class MeasurementFrame {
public:
    explicit MeasurementFrame(std::vector<std::vector<MinimalProjection>> measurements,
                              double tol = 1e-10);

    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<std::vector<MinimalProjection>>& measurements() const {
        return measurements_;
    }
    const MinimalProjection& projection(int i, int j) const {
        return measurements_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

private:
    std::vector<std::vector<MinimalProjection>> measurements_;
    int n_ = 0;
    int k_ = 0;
};

/// k rows of outcome distributions, one row per measurement. Entries must be
/// >= -1e-12 and rows must sum to 1 within 1e-10 unless built `unchecked`
/// (used for Born tables of operators outside the dual cone).
class ProbabilityTable {
public:
    explicit ProbabilityTable(std::vector<std::vector<double>> rows);
    static ProbabilityTable unchecked(std::vector<std::vector<double>> rows);

    int k() const { return static_cast<int>(rows_.size()); }
    int n() const { return rows_.empty() ? 0 : static_cast<int>(rows_.front().size()); }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    double at(int i, int j) const {
        return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

private:
    ProbabilityTable() = default;
    std::vector<std::vector<double>> rows_;
};

/// Trace-1 operator satisfying every frame constraint Tr(W P) >= -1e-10 while
/// having an eigenvalue below -1e-8: Born-consistent but not a density.
struct DualConeWitness {
    HermitianOperator w;
    double min_eigenvalue = 0.0;
    std::vector<double> constraint_slacks;
    std::uint64_t direction_seed = 0;
};

/// Number of measurements needed to fix a state on C^n: n+1, since
/// (n+1)(n-1)+1 = n^2 matches the real dimension of Hermitian space.
int required_frame_count(int n);

/// Dimension of the real span of all k*n projections in Hermitian space
/// (Gram-matrix rank, eigenvalues below 1e-8 counted as zero).
int frame_rank(const MeasurementFrame& frame);

/// k random projective measurements (eigenbases of seeded Haar unitaries).
/// Retries with sub-seeds until frame_rank reaches min(k(n-1)+1, n^2);
/// throws SearchExhaustedError after 100 attempts.
MeasurementFrame random_frame(std::uint64_t seed, int n, int k);

/// Born rule applied to every projection; rows sum to 1 for any trace-1 W.
ProbabilityTable born_table(const HermitianOperator& w, const MeasurementFrame& frame);

/// Unique Hermitian W with Tr(W P_ij) = table[i][j], by least squares over an
/// orthonormal Hermitian basis. Requires frame_rank = n^2; throws
/// UnderdeterminedFrameError otherwise, and InconsistentTableError when the
/// residual exceeds 1e-6 (no operator generates such a table).
HermitianOperator reconstruct_state(const MeasurementFrame& frame, const ProbabilityTable& table);

/// Same, over a caller-supplied spanning Hermitian basis (for independence
/// checks across basis orderings).
HermitianOperator reconstruct_state(const MeasurementFrame& frame, const ProbabilityTable& table,
                                    const std::vector<ComplexMatrix>& basis);

/// True iff Tr(W P) >= -tol for every projection in the frame; the frame's
/// projections generate the cone, so checking generators suffices.
bool in_dual_cone(const HermitianOperator& w, const MeasurementFrame& frame, double tol = 1e-10);

/// Ray-shooting from 1/n along seeded random traceless directions: step to
/// the last point satisfying all frame constraints (times 0.999 to stay
/// strictly inside), accept when an eigenvalue is below -1e-8. Falls back to
/// deterministic directions before throwing SearchExhaustedError.
DualConeWitness find_nonpsd_witness(const MeasurementFrame& frame, std::uint64_t seed,
                                    int max_rays = 10000);

} // namespace ncrl
