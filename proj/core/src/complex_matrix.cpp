#include "ncrl/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "ncrl/errors.hpp"

namespace ncrl {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 0) throw DimensionMismatchError("matrix dimension must be nonnegative");
    entries_.assign(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<Complex> entries) : dim_(dim) {
    if (dim < 0) throw DimensionMismatchError("matrix dimension must be nonnegative");
    if (entries.size() != static_cast<std::size_t>(dim) * dim)
        throw DimensionMismatchError("entry count does not match dim*dim");
    entries_ = std::move(entries);
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = Complex(1.0, 0.0);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.at(j, i) = at(i, j);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.at(i, j) = std::conj(at(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t(0.0, 0.0);
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : entries_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (dim_ != other.dim_) throw DimensionMismatchError("matrix addition: dims differ");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (dim_ != other.dim_) throw DimensionMismatchError("matrix subtraction: dims differ");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (Complex& z : entries_) z *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw DimensionMismatchError("matrix product: dims differ");
    const int n = lhs.dim_;
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Complex a = lhs.at(i, k);
            if (a == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) out.at(i, j) += a * rhs.at(k, j);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatchError("max_abs_diff: dims differ");
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
    return m;
}

Complex trace_inner_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatchError("trace_inner_product: dims differ");
    Complex t(0.0, 0.0);
    for (int i = 0; i < a.dim(); ++i)
        for (int k = 0; k < a.dim(); ++k) t += std::conj(a.at(k, i)) * b.at(k, i);
    return t;
}

double hs_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

ComplexMatrix outer_product(const std::vector<Complex>& v) {
    const int n = static_cast<int>(v.size());
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = v[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(j)]);
    return out;
}

} // namespace ncrl
