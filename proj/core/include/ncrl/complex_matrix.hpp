#pragma once

#include <complex>
#include <vector>

namespace ncrl {

using Complex = std::complex<double>;

/// Dense n x n complex matrix, row-major. Value type; all algebra returns
/// fresh matrices. Dimensions here never exceed ~16, so no blocking, no
/// views, no allocator games.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, std::vector<Complex> entries);

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }
    bool empty() const { return dim_ == 0; }

    Complex& at(int row, int col) { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }
    const Complex& at(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * dim_ + col];
    }

    const std::vector<Complex>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;

    /// max_{ij} |a_ij|
    double max_abs() const;
    /// ||A - A*||_max
    double hermiticity_defect() const;
    bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
        lhs -= rhs;
        return lhs;
    }
    friend ComplexMatrix operator*(Complex scalar, ComplexMatrix m) {
        m *= scalar;
        return m;
    }
    friend ComplexMatrix operator*(ComplexMatrix m, Complex scalar) {
        m *= scalar;
        return m;
    }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

private:
    int dim_ = 0;
    std::vector<Complex> entries_;
};

/// max_{ij} |a_ij - b_ij|; matrices must share dims.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert-Schmidt inner product Tr(A* B). Real for Hermitian pairs.
Complex trace_inner_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// sqrt(Tr(A* A))
double hs_norm(const ComplexMatrix& a);

/// Outer product v v* of a complex column vector.
ComplexMatrix outer_product(const std::vector<Complex>& v);

} // namespace ncrl
