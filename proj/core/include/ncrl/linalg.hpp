#pragma once

#include <vector>

namespace ncrl {

/// Dense real matrix in row-major order, rows x cols. Only what the
/// least-squares paths need.
struct RealMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    RealMatrix() = default;
    RealMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

struct LeastSquaresResult {
    std::vector<double> x;
    /// Euclidean norm of A x - b.
    double residual_norm = 0.0;
};

/// Minimum-norm-residual solve of A x ~= b via Householder QR.
/// Requires rows >= cols and full column rank; throws DegenerateSetupError
/// when a pivot collapses below rank_tol * max |column norm|.
LeastSquaresResult solve_least_squares(RealMatrix a, std::vector<double> b,
                                       double rank_tol = 1e-12);

/// Solve a 3x3 linear system by partial-pivot elimination.
/// Throws DegenerateSetupError when |det| scaled by the matrix magnitude
/// falls below tol.
std::vector<double> solve3(const double a[3][3], const double b[3], double tol = 1e-13);

/// Cross product u x v for length-3 vectors.
std::vector<double> cross3(const std::vector<double>& u, const std::vector<double>& v);

double dot3(const std::vector<double>& u, const std::vector<double>& v);

double norm3(const std::vector<double>& u);

} // namespace ncrl
