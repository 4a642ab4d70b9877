#pragma once

#include <vector>

#include "sbl/matrix.hpp"
#include "sbl/polynomial.hpp"

namespace sbl {

/// Characteristic polynomial det(lambda I - A) by the Faddeev-LeVerrier
/// recurrence: M_1 = A, c_k = -tr(M_k)/k, M_{k+1} = A (M_k + c_k I).
/// Trace-and-product arithmetic only, so the coefficients are independent
/// of any root-finder conditioning; on integer matrices the result is exact.
inline Polynomial char_poly(const Matrix& A) {
    const std::size_t n = A.dim();
    require(A.all_finite(), "char_poly: non-finite entries");

    std::vector<cplx> coeff(n + 1);
    coeff[n] = 1.0;
    Matrix M = A;
    cplx c = -M.trace();
    coeff[n - 1] = c;
    for (std::size_t k = 2; k <= n; ++k) {
        Matrix t = M;
        for (std::size_t i = 0; i < n; ++i) t(i, i) += c;
        M = A * t;
        c = -M.trace() / double(k);
        coeff[n - k] = c;
    }
    return Polynomial(std::move(coeff));
}

/// Spectrum with multiplicity: the roots of the characteristic polynomial.
/// Accuracy near multiple eigenvalues is limited by root-finder
/// conditioning (cluster radius ~ eps^(1/m) for an m-fold eigenvalue);
/// symmetric functions of the output remain coefficient-accurate.
inline std::vector<cplx> eigenvalues(const Matrix& A, double tol = 1e-12) {
    return poly_roots(char_poly(A), tol);
}

}  // namespace sbl
