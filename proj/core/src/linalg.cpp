#include "ncrl/linalg.hpp"

#include <cmath>

#include "ncrl/errors.hpp"

namespace ncrl {

LeastSquaresResult solve_least_squares(RealMatrix a, std::vector<double> b, double rank_tol) {
    const int m = a.rows;
    const int n = a.cols;
    if (static_cast<int>(b.size()) != m)
        throw DimensionMismatchError("solve_least_squares: rhs length != row count");
    if (m < n) throw DimensionMismatchError("solve_least_squares: need rows >= cols");

    double col_scale = 0.0;
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += a.at(i, j) * a.at(i, j);
        col_scale = std::max(col_scale, std::sqrt(s));
    }
    if (col_scale == 0.0) throw DegenerateSetupError("solve_least_squares: zero matrix");

    // Householder QR, reflectors applied in place to A and b.
    for (int k = 0; k < n; ++k) {
        double norm = 0.0;
        for (int i = k; i < m; ++i) norm = std::hypot(norm, a.at(i, k));
        if (norm <= rank_tol * col_scale)
            throw DegenerateSetupError("solve_least_squares: rank-deficient column");
        // Reflector sign follows the column head, so the head of the scaled
        // vector is 1 + |a_kk|/norm and never cancels.
        if (a.at(k, k) < 0.0) norm = -norm;
        for (int i = k; i < m; ++i) a.at(i, k) /= norm;
        a.at(k, k) += 1.0;
        for (int j = k + 1; j < n; ++j) {
            double s = 0.0;
            for (int i = k; i < m; ++i) s += a.at(i, k) * a.at(i, j);
            s = -s / a.at(k, k);
            for (int i = k; i < m; ++i) a.at(i, j) += s * a.at(i, k);
        }
        double s = 0.0;
        for (int i = k; i < m; ++i) s += a.at(i, k) * b[static_cast<std::size_t>(i)];
        s = -s / a.at(k, k);
        for (int i = k; i < m; ++i) b[static_cast<std::size_t>(i)] += s * a.at(i, k);
        a.at(k, k) = -norm; // reflection sends the column head to -norm
    }

    LeastSquaresResult out;
    out.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= a.at(i, j) * out.x[static_cast<std::size_t>(j)];
        out.x[static_cast<std::size_t>(i)] = s / a.at(i, i);
    }
    double r = 0.0;
    for (int i = n; i < m; ++i) r += b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    out.residual_norm = std::sqrt(r);
    return out;
}

std::vector<double> solve3(const double a[3][3], const double b[3], double tol) {
    double m[3][4];
    double scale = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m[i][j] = a[i][j];
            scale = std::max(scale, std::abs(a[i][j]));
        }
        m[i][3] = b[i];
    }
    if (scale == 0.0) throw DegenerateSetupError("solve3: zero matrix");

    int perm[3] = {0, 1, 2};
    double det = 1.0;
    for (int k = 0; k < 3; ++k) {
        int pivot = k;
        for (int i = k + 1; i < 3; ++i)
            if (std::abs(m[perm[i]][k]) > std::abs(m[perm[pivot]][k])) pivot = i;
        std::swap(perm[k], perm[pivot]);
        const double p = m[perm[k]][k];
        det *= p;
        if (std::abs(p) <= tol * scale)
            throw DegenerateSetupError("solve3: singular system");
        for (int i = k + 1; i < 3; ++i) {
            const double f = m[perm[i]][k] / p;
            for (int j = k; j < 4; ++j) m[perm[i]][j] -= f * m[perm[k]][j];
        }
    }
    if (std::abs(det) <= tol * scale * scale * scale)
        throw DegenerateSetupError("solve3: singular system");

    std::vector<double> x(3, 0.0);
    for (int i = 2; i >= 0; --i) {
        double s = m[perm[i]][3];
        for (int j = i + 1; j < 3; ++j) s -= m[perm[i]][j] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / m[perm[i]][i];
    }
    return x;
}

std::vector<double> cross3(const std::vector<double>& u, const std::vector<double>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

double dot3(const std::vector<double>& u, const std::vector<double>& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

double norm3(const std::vector<double>& u) {
    return std::sqrt(dot3(u, u));
}

} // namespace ncrl
