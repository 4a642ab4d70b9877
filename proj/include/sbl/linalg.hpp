#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "sbl/matrix.hpp"

namespace sbl {

/// Solve A X = B by Gaussian elimination with partial pivoting.
/// Throws numerical_error when a pivot falls below 1e-13 times the
/// largest initial entry of A.
inline Matrix solve(const Matrix& A, const Matrix& B) {
    const std::size_t n = A.dim();
    require(B.rows() == n, "solve: right-hand side dimension mismatch");
    require(A.all_finite() && B.all_finite(), "solve: non-finite entries");

    Matrix a = A;
    Matrix x = B;
    const double scale = std::max(a.max_abs(), 1e-300);
    const double pivot_floor = 1e-13 * scale;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= pivot_floor)
            throw numerical_error("solve: matrix singular to working tolerance", best / scale);
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) / a(k, k);
            if (f == cplx(0.0)) continue;
            a(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
        }
    }
    for (std::size_t kk = n; kk > 0; --kk) {
        const std::size_t k = kk - 1;
        for (std::size_t j = 0; j < x.cols(); ++j) {
            cplx s = x(k, j);
            for (std::size_t i = k + 1; i < n; ++i) s -= a(k, i) * x(i, j);
            x(k, j) = s / a(k, k);
        }
    }
    return x;
}

inline std::vector<cplx> solve(const Matrix& A, const std::vector<cplx>& b) {
    const std::size_t n = A.dim();
    require(b.size() == n, "solve: right-hand side dimension mismatch");
    Matrix bm(n, 1);
    for (std::size_t i = 0; i < n; ++i) bm(i, 0) = b[i];
    Matrix xm = solve(A, bm);
    return xm.column(0);
}

inline Matrix inverse(const Matrix& A) { return solve(A, Matrix::identity(A.dim())); }

/// Determinant via partial-pivot elimination; an exactly vanishing pivot
/// yields 0 rather than an error.
inline cplx det(const Matrix& A) {
    const std::size_t n = A.dim();
    Matrix a = A;
    cplx d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
            d = -d;
        }
        d *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) / a(k, k);
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

/// Numerical rank by complete-pivot elimination: a pivot counts while its
/// modulus exceeds tol times the largest initial pivot.
inline int rank(const Matrix& M, double tol = 1e-9) {
    require(M.all_finite(), "rank: non-finite entries");
    Matrix a = M;
    const std::size_t r = a.rows(), c = a.cols();
    const std::size_t steps = std::min(r, c);

    double first_pivot = a.max_abs();
    if (first_pivot == 0.0) return 0;
    const double floor = tol * first_pivot;

    std::vector<std::size_t> rperm(r), cperm(c);
    for (std::size_t i = 0; i < r; ++i) rperm[i] = i;
    for (std::size_t j = 0; j < c; ++j) cperm[j] = j;

    int rk = 0;
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pi = k, pj = k;
        double best = 0.0;
        for (std::size_t i = k; i < r; ++i)
            for (std::size_t j = k; j < c; ++j) {
                const double v = std::abs(a(rperm[i], cperm[j]));
                if (v > best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best <= floor) break;
        std::swap(rperm[k], rperm[pi]);
        std::swap(cperm[k], cperm[pj]);
        ++rk;
        const cplx pivot = a(rperm[k], cperm[k]);
        for (std::size_t i = k + 1; i < r; ++i) {
            const cplx f = a(rperm[i], cperm[k]) / pivot;
            if (f == cplx(0.0)) continue;
            for (std::size_t j = k; j < c; ++j) a(rperm[i], cperm[j]) -= f * a(rperm[k], cperm[j]);
        }
    }
    return rk;
}

}  // namespace sbl
