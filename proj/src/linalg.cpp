#include "spinphase/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spinphase {

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : a_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
    double d = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix r(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k) {
            const Complex xik = x(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < y.cols(); ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix r(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(i, j) = x(i, j) + y(i, j);
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix r(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(i, j) = x(i, j) - y(i, j);
    return r;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& x) {
    ComplexMatrix r(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(i, j) = s * x(i, j);
    return r;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). The pivot a_pq = |a_pq| e^{i phi}
// is first phased real, then the standard symmetric 2x2 rotation is applied.
// a is updated in place (stays Hermitian); v accumulates the rotations.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
    const Complex apq = a(p, q);
    const double aabs = std::abs(apq);
    if (aabs < 1e-300) {
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        return;
    }
    const Complex phase = apq / aabs; // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * aabs);
    // tan(2 theta) = -1/tau zeroes the pivot for this rotation convention;
    // the smaller-magnitude root of t^2 - 2 tau t - 1 = 0 keeps |theta| <= pi/4.
    double t;
    if (tau >= 0.0)
        t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const int n = a.rows();
    // Column update: columns p,q of A <- A * U with
    //   U(p,p) = c, U(p,q) = -s, U(q,p) = s*conj(phase)... expressed below via
    //   u_pp = c, u_qp = s * conj(phase), u_pq = -s * phase, u_qq = c
    // chosen so that U = D J with D = diag(1, conj(phase)) and J the real rotation.
    for (int i = 0; i < n; ++i) {
        const Complex aip = a(i, p);
        const Complex aiq = a(i, q);
        a(i, p) = c * aip + s * std::conj(phase) * aiq;
        a(i, q) = -s * phase * aip + c * aiq;
    }
    // Row update: A <- U^dagger * A.
    for (int j = 0; j < n; ++j) {
        const Complex apj = a(p, j);
        const Complex aqj = a(q, j);
        a(p, j) = c * apj + s * phase * aqj;
        a(q, j) = -s * std::conj(phase) * apj + c * aqj;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    // Accumulate V <- V * U.
    for (int i = 0; i < n; ++i) {
        const Complex vip = v(i, p);
        const Complex viq = v(i, q);
        v(i, p) = c * vip + s * std::conj(phase) * viq;
        v(i, q) = -s * phase * vip + c * viq;
    }
}

} // namespace

EigenSystem eig_hermitian(const ComplexMatrix& m, double hermitian_tol) {
    const int n = m.rows();
    if (n != m.cols() || n < 1 || n > 4) throw Error("eig_hermitian: dimension must be 1..4");

    const double scale = std::max(1.0, m.max_abs());
    const double defect = m.hermiticity_defect();
    if (defect > hermitian_tol * scale) throw NonHermitianError(defect);

    ComplexMatrix a = m;
    // Symmetrize rounding-level asymmetry so the iteration sees an exactly
    // Hermitian matrix.
    for (int i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const Complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double tol = 1e-14 * std::max(1.0, a.frobenius_norm());
    for (int sweep = 0; sweep < 64 && offdiag_norm(a) > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 0.0) jacobi_rotate(a, v, p, q);
    }
    if (offdiag_norm(a) > tol) throw Error("eig_hermitian: Jacobi sweep did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es;
    es.eigenvalues.resize(n);
    es.vectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        const int src = order[j];
        es.eigenvalues[j] = a(src, src).real();
        // Canonical phase: largest component real positive.
        int pivot = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double mag = std::abs(v(i, src));
            if (mag > best + 1e-15) {
                best = mag;
                pivot = i;
            }
        }
        const Complex ph = (best > 0.0) ? std::conj(v(pivot, src)) / best : Complex(1.0);
        for (int i = 0; i < n; ++i) es.vectors(i, j) = ph * v(i, src);
    }
    return es;
}

ComplexMatrix expm_i_hermitian(const ComplexMatrix& m, double t) {
    const EigenSystem es = eig_hermitian(m);
    const int n = m.rows();
    ComplexMatrix u(n, n);
    for (int k = 0; k < n; ++k) {
        const Complex ph = std::exp(Complex(0.0, -es.eigenvalues[k] * t));
        for (int i = 0; i < n; ++i) {
            const Complex vik = es.vectors(i, k);
            if (vik == 0.0) continue;
            for (int j = 0; j < n; ++j) u(i, j) += vik * ph * std::conj(es.vectors(j, k));
        }
    }
    return u;
}

} // namespace spinphase
