#pragma once

#include <complex>
#include <vector>

#include "spinphase/errors.hpp"

namespace spinphase {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Everything in this project is 2x2 or 4x4,
// so no effort is spent on large-dimension performance.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int i, int j) { return a_[i * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[i * cols_ + j]; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double max_abs() const;
    double frobenius_norm() const;
    // Worst |a_ij - conj(a_ji)| over all pairs.
    double hermiticity_defect() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Complex> a_;
};

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(Complex s, const ComplexMatrix& x);

// Eigenvalues in ascending order; vectors holds the matching orthonormal
// eigenvectors as columns.
struct EigenSystem {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;
};

// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
// Rejects inputs whose hermiticity defect exceeds hermitian_tol (scaled by the
// matrix magnitude). Output is deterministic: eigenvalues ascending, each
// eigenvector phased so its largest component is real positive.
EigenSystem eig_hermitian(const ComplexMatrix& m, double hermitian_tol = 1e-10);

// exp(-i m t) for Hermitian m, built from the eigendecomposition, so it is
// unitary to rounding for any t.
ComplexMatrix expm_i_hermitian(const ComplexMatrix& m, double t);

} // namespace spinphase
