#include "ncrl/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ncrl/errors.hpp"

namespace ncrl {

namespace {

double off_diagonal_max(const ComplexMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) m = std::max(m, std::abs(a.at(i, j)));
    return m;
}

} // namespace

EigenSystem eigen_system(const ComplexMatrix& input) {
    if (input.empty()) throw DimensionMismatchError("eigen_system: empty matrix");
    if (input.hermiticity_defect() > 1e-12)
        throw InvariantViolationError("eigen_system: matrix not Hermitian within 1e-12");

    const int n = input.dim();
    // Work on the exactly Hermitian average so rotations keep the diagonal real.
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a.at(i, j) = 0.5 * (input.at(i, j) + std::conj(input.at(j, i)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(a.max_abs(), 1e-300);
    const double stop = 1e-15 * scale;

    for (int sweep = 0; sweep < 60 && off_diagonal_max(a) > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex beta = a.at(p, q);
                const double b = std::abs(beta);
                if (b <= stop * 1e-2) continue;

                const double alpha = a.at(p, p).real();
                const double gamma = a.at(q, q).real();
                const Complex phase = beta / b;
                const double tau = (gamma - alpha) / (2.0 * b);
                // Small-angle root of t^2 - 2 tau t - 1 = 0.
                const double t = (tau >= 0.0 ? -1.0 : 1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Columns: [p q] <- [p q] * [[c, -s*phase], [s*conj(phase), c]]
                for (int i = 0; i < n; ++i) {
                    const Complex aip = a.at(i, p);
                    const Complex aiq = a.at(i, q);
                    a.at(i, p) = c * aip + s * std::conj(phase) * aiq;
                    a.at(i, q) = -s * phase * aip + c * aiq;
                    const Complex vip = v.at(i, p);
                    const Complex viq = v.at(i, q);
                    v.at(i, p) = c * vip + s * std::conj(phase) * viq;
                    v.at(i, q) = -s * phase * vip + c * viq;
                }
                // Rows: conjugate-transpose action.
                for (int j = 0; j < n; ++j) {
                    const Complex apj = a.at(p, j);
                    const Complex aqj = a.at(q, j);
                    a.at(p, j) = c * apj + s * phase * aqj;
                    a.at(q, j) = -s * std::conj(phase) * apj + c * aqj;
                }
                a.at(p, q) = Complex(0.0, 0.0);
                a.at(q, p) = Complex(0.0, 0.0);
                a.at(p, p) = Complex(a.at(p, p).real(), 0.0);
                a.at(q, q) = Complex(a.at(q, q).real(), 0.0);
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    EigenSystem out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.vectors = ComplexMatrix(n);
    for (int col = 0; col < n; ++col) {
        const int src = order[static_cast<std::size_t>(col)];
        out.values.push_back(a.at(src, src).real());
        for (int i = 0; i < n; ++i) out.vectors.at(i, col) = v.at(i, src);
    }
    return out;
}

std::vector<EigenPair> eigen_hermitian(const HermitianOperator& a, double cluster_tol) {
    const EigenSystem sys = eigen_system(a.matrix());
    const int n = a.dim();

    std::vector<EigenPair> out;
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && sys.values[static_cast<std::size_t>(end)] -
                                  sys.values[static_cast<std::size_t>(end - 1)] <=
                              cluster_tol)
            ++end;

        ComplexMatrix proj(n);
        double value = 0.0;
        for (int m = start; m < end; ++m) {
            value += sys.values[static_cast<std::size_t>(m)];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    proj.at(i, j) += sys.vectors.at(i, m) * std::conj(sys.vectors.at(j, m));
        }
        value /= static_cast<double>(end - start);
        // Rounding in v v* sums stays ~1e-15; construction tolerance is looser.
        out.push_back(EigenPair{value, end - start, HermitianOperator(std::move(proj), 1e-11)});
        start = end;
    }
    return out;
}

double min_eigenvalue(const HermitianOperator& a) {
    return eigen_system(a.matrix()).values.front();
}

double min_eigenvalue(const ComplexMatrix& a) {
    return eigen_system(a).values.front();
}

bool is_psd(const HermitianOperator& a, double tol) {
    return min_eigenvalue(a) >= -tol;
}

bool is_density(const HermitianOperator& a, double tol) {
    return is_psd(a, tol) && std::abs(a.real_trace() - 1.0) <= tol;
}

} // namespace ncrl
