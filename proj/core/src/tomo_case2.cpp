#include "ncrl/tomo_case2.hpp"

#include <cmath>
#include <string>

#include "ncrl/eigen.hpp"
#include "ncrl/errors.hpp"
#include "ncrl/linalg.hpp"
#include "ncrl/random_ops.hpp"
#include "ncrl/rng.hpp"

namespace ncrl {

MeasurementFrame::MeasurementFrame(std::vector<std::vector<MinimalProjection>> measurements,
                                   double tol)
    : measurements_(std::move(measurements)) {
    if (measurements_.empty())
        throw DimensionMismatchError("MeasurementFrame: no measurements");
    k_ = static_cast<int>(measurements_.size());
    n_ = measurements_.front().empty() ? 0 : measurements_.front().front().dim();
    if (n_ < 2) throw DimensionMismatchError("MeasurementFrame: dimension must be >= 2");

    for (int i = 0; i < k_; ++i) {
        const auto& meas = measurements_[static_cast<std::size_t>(i)];
        if (static_cast<int>(meas.size()) != n_)
            throw DimensionMismatchError("MeasurementFrame: measurement " + std::to_string(i) +
                                         " does not have n outcomes");
        ComplexMatrix sum(n_);
        for (int j = 0; j < n_; ++j) {
            const MinimalProjection& p = meas[static_cast<std::size_t>(j)];
            if (p.dim() != n_)
                throw DimensionMismatchError("MeasurementFrame: projection dim mismatch");
            sum += p.matrix();
            for (int l = j + 1; l < n_; ++l) {
                const Complex t =
                    trace_inner_product(p.matrix(), meas[static_cast<std::size_t>(l)].matrix());
                if (std::abs(t) > tol)
                    throw InvariantViolationError(
                        "MeasurementFrame: measurement " + std::to_string(i) +
                        " projections " + std::to_string(j) + "," + std::to_string(l) +
                        " not orthogonal");
            }
        }
        if (max_abs_diff(sum, ComplexMatrix::identity(n_)) > tol)
            throw InvariantViolationError("MeasurementFrame: measurement " + std::to_string(i) +
                                          " does not sum to identity");
    }
}

ProbabilityTable::ProbabilityTable(std::vector<std::vector<double>> rows) {
    if (rows.empty()) throw DimensionMismatchError("ProbabilityTable: no rows");
    const std::size_t n = rows.front().size();
    if (n == 0) throw DimensionMismatchError("ProbabilityTable: empty row");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n)
            throw DimensionMismatchError("ProbabilityTable: row " + std::to_string(i) +
                                         " has inconsistent length");
        double sum = 0.0;
        for (double p : rows[i]) {
            if (p < -1e-12)
                throw InvariantViolationError("ProbabilityTable: row " + std::to_string(i) +
                                              " has entry " + std::to_string(p) + " below 0");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-10)
            throw InvariantViolationError("ProbabilityTable: row " + std::to_string(i) +
                                          " sums to " + std::to_string(sum) + ", not 1");
    }
    rows_ = std::move(rows);
}

ProbabilityTable ProbabilityTable::unchecked(std::vector<std::vector<double>> rows) {
    ProbabilityTable t;
    t.rows_ = std::move(rows);
    return t;
}

int required_frame_count(int n) {
    if (n < 2) throw DimensionMismatchError("required_frame_count: n must be >= 2");
    return n + 1;
}

int frame_rank(const MeasurementFrame& frame) {
    const int m = frame.k() * frame.n();
    ComplexMatrix gram(m);
    for (int a = 0; a < m; ++a) {
        const ComplexMatrix& pa = frame.projection(a / frame.n(), a % frame.n()).matrix();
        for (int b = a; b < m; ++b) {
            const ComplexMatrix& pb = frame.projection(b / frame.n(), b % frame.n()).matrix();
            const double g = trace_inner_product(pa, pb).real();
            gram.at(a, b) = Complex(g, 0.0);
            gram.at(b, a) = Complex(g, 0.0);
        }
    }
    int rank = 0;
    for (double v : eigen_system(gram).values)
        if (v > 1e-8) ++rank;
    return rank;
}

MeasurementFrame random_frame(std::uint64_t seed, int n, int k) {
    if (n < 2) throw DimensionMismatchError("random_frame: n must be >= 2");
    if (k < 1) throw DimensionMismatchError("random_frame: k must be >= 1");
    const int target = std::min(k * (n - 1) + 1, n * n);

    SplitMix64 root(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        SplitMix64 rng = root.child(static_cast<std::uint64_t>(attempt));
        std::vector<std::vector<MinimalProjection>> measurements;
        measurements.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            const ComplexMatrix u = random_unitary(rng, n);
            std::vector<MinimalProjection> outcomes;
            outcomes.reserve(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                std::vector<Complex> col(static_cast<std::size_t>(n));
                for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = u.at(r, j);
                outcomes.push_back(MinimalProjection::from_unit_vector(col));
            }
            measurements.push_back(std::move(outcomes));
        }
        MeasurementFrame frame(std::move(measurements));
        if (frame_rank(frame) == target) return frame;
    }
    throw SearchExhaustedError("random_frame: rank target not reached in 100 attempts");
}

ProbabilityTable born_table(const HermitianOperator& w, const MeasurementFrame& frame) {
    if (w.dim() != frame.n()) throw DimensionMismatchError("born_table: dims differ");
    if (std::abs(w.real_trace() - 1.0) > 1e-10)
        throw InvariantViolationError("born_table: Tr(W) != 1");
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(frame.k()));
    for (int i = 0; i < frame.k(); ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        row.reserve(static_cast<std::size_t>(frame.n()));
        for (int j = 0; j < frame.n(); ++j)
            row.push_back(trace_inner_product(w.matrix(), frame.projection(i, j).matrix()).real());
    }
    return ProbabilityTable::unchecked(std::move(rows));
}

HermitianOperator reconstruct_state(const MeasurementFrame& frame, const ProbabilityTable& table) {
    return reconstruct_state(frame, table, hermitian_basis(frame.n()));
}

HermitianOperator reconstruct_state(const MeasurementFrame& frame, const ProbabilityTable& table,
                                    const std::vector<ComplexMatrix>& basis) {
    const int n = frame.n();
    const int k = frame.k();
    if (table.k() != k || table.n() != n)
        throw DimensionMismatchError("reconstruct_state: table shape does not match frame");
    if (static_cast<int>(basis.size()) != n * n)
        throw DimensionMismatchError("reconstruct_state: basis must have n^2 elements");

    const int rank = frame_rank(frame);
    if (rank < n * n)
        throw UnderdeterminedFrameError(
            "reconstruct_state: frame spans only " + std::to_string(rank) + " of " +
                std::to_string(n * n) + " dimensions",
            rank);

    RealMatrix m(k * n, n * n);
    std::vector<double> rhs(static_cast<std::size_t>(k * n), 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < n; ++j) {
            const int row = i * n + j;
            const ComplexMatrix& p = frame.projection(i, j).matrix();
            for (int c = 0; c < n * n; ++c)
                m.at(row, c) = trace_inner_product(basis[static_cast<std::size_t>(c)], p).real();
            rhs[static_cast<std::size_t>(row)] = table.at(i, j);
        }
    }

    const LeastSquaresResult lsq = solve_least_squares(std::move(m), std::move(rhs));
    if (lsq.residual_norm > 1e-6)
        throw InconsistentTableError("reconstruct_state: no operator reproduces this table"
                                     " (residual " + std::to_string(lsq.residual_norm) + ")",
                                     lsq.residual_norm);

    ComplexMatrix w(n);
    for (int c = 0; c < n * n; ++c) {
        const double coeff = lsq.x[static_cast<std::size_t>(c)];
        const ComplexMatrix& b = basis[static_cast<std::size_t>(c)];
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) w.at(r, s) += coeff * b.at(r, s);
    }
    return HermitianOperator(std::move(w));
}

bool in_dual_cone(const HermitianOperator& w, const MeasurementFrame& frame, double tol) {
    if (w.dim() != frame.n()) throw DimensionMismatchError("in_dual_cone: dims differ");
    for (int i = 0; i < frame.k(); ++i)
        for (int j = 0; j < frame.n(); ++j)
            if (trace_inner_product(w.matrix(), frame.projection(i, j).matrix()).real() < -tol)
                return false;
    return true;
}

namespace {

DualConeWitness evaluate_ray(const MeasurementFrame& frame, const ComplexMatrix& direction,
                             std::uint64_t ray_index, bool& accepted) {
    const int n = frame.n();
    accepted = false;

    // Constraint value along W(t) = 1/n + t D is 1/n + t Tr(D P); the first
    // constraint to hit zero bounds the step.
    double t_star = -1.0;
    for (int i = 0; i < frame.k(); ++i) {
        for (int j = 0; j < n; ++j) {
            const double d =
                trace_inner_product(direction, frame.projection(i, j).matrix()).real();
            if (d < 0.0) {
                const double t = (1.0 / n) / (-d);
                if (t_star < 0.0 || t < t_star) t_star = t;
            }
        }
    }
    if (t_star < 0.0) return DualConeWitness{HermitianOperator(ComplexMatrix::identity(n)), 0, {}, 0};

    ComplexMatrix wm = direction;
    wm *= Complex(0.999 * t_star, 0.0);
    const double inv_n = 1.0 / n;
    for (int i = 0; i < n; ++i) wm.at(i, i) += Complex(inv_n, 0.0);

    HermitianOperator w(std::move(wm));
    const double min_eig = min_eigenvalue(w);
    if (min_eig >= -1e-8)
        return DualConeWitness{HermitianOperator(ComplexMatrix::identity(n)), 0, {}, 0};

    std::vector<double> slacks;
    slacks.reserve(static_cast<std::size_t>(frame.k() * n));
    for (int i = 0; i < frame.k(); ++i)
        for (int j = 0; j < n; ++j)
            slacks.push_back(
                trace_inner_product(w.matrix(), frame.projection(i, j).matrix()).real());

    accepted = true;
    return DualConeWitness{std::move(w), min_eig, std::move(slacks), ray_index};
}

} // namespace

DualConeWitness find_nonpsd_witness(const MeasurementFrame& frame, std::uint64_t seed,
                                    int max_rays) {
    const int n = frame.n();
    if (frame.k() != n + 1)
        throw InvariantViolationError("find_nonpsd_witness: needs exactly n+1 measurements");
    if (frame_rank(frame) != n * n)
        throw UnderdeterminedFrameError("find_nonpsd_witness: frame does not span state space",
                                        frame_rank(frame));

    SplitMix64 root(seed);
    for (int ray = 0; ray < max_rays; ++ray) {
        SplitMix64 rng = root.child(static_cast<std::uint64_t>(ray));
        const ComplexMatrix direction = random_traceless_direction(rng, n);
        bool accepted = false;
        DualConeWitness w = evaluate_ray(frame, direction, static_cast<std::uint64_t>(ray), accepted);
        if (accepted) return w;
    }

    // Deterministic fallback: directions pointing from Fourier-vector pure
    // states back through the center.
    for (int m = 0; m < n; ++m) {
        std::vector<Complex> v(static_cast<std::size_t>(n));
        const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
        for (int r = 0; r < n; ++r) {
            const double angle = 2.0 * std::acos(-1.0) * m * r / n;
            v[static_cast<std::size_t>(r)] =
                Complex(std::cos(angle) * inv_sqrt_n, std::sin(angle) * inv_sqrt_n);
        }
        ComplexMatrix direction = outer_product(v);
        direction *= Complex(-1.0, 0.0);
        const double inv_n = 1.0 / n;
        for (int r = 0; r < n; ++r) direction.at(r, r) += Complex(inv_n, 0.0);

        bool accepted = false;
        DualConeWitness w = evaluate_ray(frame, direction,
                                         static_cast<std::uint64_t>(max_rays + m), accepted);
        if (accepted) return w;
    }

    throw SearchExhaustedError("find_nonpsd_witness: no witness in " + std::to_string(max_rays) +
                               " rays");
}

} // namespace ncrl
