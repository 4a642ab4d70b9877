#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "sbl/linalg.hpp"
#include "sbl/matrix.hpp"
#include "sbl/spectrum.hpp"

namespace sbl {

/// Point of C^n in symmetrized-polydisc coordinates: z_j is the j-th
/// elementary symmetric function of the underlying eigenvalue tuple.
struct SymPoint {
    std::vector<cplx> z;

    std::size_t n() const { return z.size(); }
    bool all_finite() const {
        for (const cplx& v : z)
            if (!is_finite(v)) return false;
        return true;
    }
    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : z) m = std::max(m, std::abs(v));
        return m;
    }
};

inline double sym_distance(const SymPoint& a, const SymPoint& b) {
    require(a.n() == b.n(), "sym_distance: dimension mismatch");
    double m = 0.0;
    for (std::size_t j = 0; j < a.n(); ++j) m = std::max(m, std::abs(a.z[j] - b.z[j]));
    return m;
}

inline double spectral_radius(const Matrix& A, double tol = 1e-12) {
    double r = 0.0;
    for (const cplx& ev : eigenvalues(A, tol)) r = std::max(r, std::abs(ev));
    return r;
}

/// sigma(A) = (sigma_1, ..., sigma_n): the signed characteristic
/// coefficients, sigma_j = (-1)^j [lambda^{n-j}] det(lambda I - A).
/// sigma_1 is the trace, sigma_n the determinant.
inline SymPoint sigma(const Matrix& A) {
    const std::size_t n = A.dim();
    const Polynomial p = char_poly(A);
    SymPoint s;
    s.z.resize(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const cplx c = p.coeff(static_cast<int>(n - j));
        s.z[j - 1] = (j % 2 == 1) ? -c : c;
    }
    return s;
}

/// The monic polynomial whose signed coefficients are z: the inverse of
/// the coefficient extraction in sigma(), bit-exact both ways.
inline Polynomial sym_point_poly(const SymPoint& z) {
    const std::size_t n = z.n();
    require(n >= 1, "sym_point_poly: empty point");
    require(z.all_finite(), "sym_point_poly: non-finite entries");
    std::vector<cplx> c(n + 1);
    c[n] = 1.0;
    for (std::size_t j = 1; j <= n; ++j) c[n - j] = (j % 2 == 1) ? -z.z[j - 1] : z.z[j - 1];
    return Polynomial(std::move(c));
}

/// Elementary symmetric functions of a tuple, by incremental expansion of
/// prod (lambda - zeta_i).
inline SymPoint pi_n(const std::vector<cplx>& zetas) {
    require(!zetas.empty(), "pi_n: empty tuple");
    for (const cplx& v : zetas) require(is_finite(v), "pi_n: non-finite entry");
    const Polynomial p = Polynomial::from_roots(zetas);
    const std::size_t n = zetas.size();
    SymPoint s;
    s.z.resize(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const cplx c = p.coeff(static_cast<int>(n - j));
        s.z[j - 1] = (j % 2 == 1) ? -c : c;
    }
    return s;
}

/// Spectral unit ball membership: rho(A) < 1 - margin. The margin guards
/// boundary ambiguity; numerics cannot decide exact boundary points.
inline bool in_omega(const Matrix& A, double margin = 0.0) {
    require(margin >= 0.0, "in_omega: margin must be nonnegative");
    return spectral_radius(A) < 1.0 - margin;
}

/// Symmetrized polydisc membership: all roots of the reconstructed
/// polynomial lie in the disc of radius 1 - margin. Shares the bit-exact
/// polynomial with sigma(), so in_gn(sigma(A), m) == in_omega(A, m).
inline bool in_gn(const SymPoint& z, double margin = 0.0) {
    require(margin >= 0.0, "in_gn: margin must be nonnegative");
    double r = 0.0;
    for (const cplx& root : poly_roots(sym_point_poly(z))) r = std::max(r, std::abs(root));
    return r < 1.0 - margin;
}

/// Discriminant of the monic polynomial attached to z, computed as the
/// Sylvester resultant of (p, p'). Vanishes exactly on coincident roots;
/// for n = 2 it reduces to z_1^2 - 4 z_2.
inline cplx discriminant(const SymPoint& z) {
    const Polynomial p = sym_point_poly(z);
    const Polynomial dp = p.derivative();
    const int m = p.degree(), k = dp.degree();
    require(m >= 2, "discriminant: degree >= 2 required");

    Matrix s(static_cast<std::size_t>(m + k), static_cast<std::size_t>(m + k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j <= m; ++j) s(i, i + j) = p.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= k; ++j) s(k + i, i + j) = dp.coeff(k - j);

    const cplx res = det(s);
    return ((m * (m - 1) / 2) % 2 == 1) ? -res : res;
}

/// Discriminant-set membership: some pair of reconstructed roots closer
/// than tol AND all roots inside the open unit disc.
inline bool in_jn(const SymPoint& z, double tol = 1e-6) {
    require(tol > 0.0, "in_jn: tol must be positive");
    const std::vector<cplx> roots = poly_roots(sym_point_poly(z));
    for (const cplx& r : roots)
        if (std::abs(r) >= 1.0) return false;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) < tol) return true;
    return false;
}

/// Holomorphic Jacobian of sigma as an n x n^2 matrix; column (r, s) sits
/// at index r*n + s. Assembled analytically from power sums: with
/// p_k = tr(A^k), d p_k / d a_{rs} = k (A^{k-1})_{sr}, pushed through the
/// Newton identities j e_j = sum_{i<=j} (-1)^{i-1} e_{j-i} p_i.
/// Finite differences serve as a test oracle only; this route stays
/// smooth across multiple eigenvalues.
inline Matrix sigma_jacobian(const Matrix& A) {
    const std::size_t n = A.dim();
    require(A.all_finite(), "sigma_jacobian: non-finite entries");

    std::vector<Matrix> pw;
    pw.reserve(n);
    pw.push_back(Matrix::identity(n));
    for (std::size_t k = 1; k < n; ++k) pw.push_back(pw.back() * A);

    std::vector<cplx> ps(n + 1, cplx(0.0));
    for (std::size_t k = 1; k <= n; ++k)
        ps[k] = (k < n) ? pw[k].trace() : trace_product(pw[n - 1], A);

    // gp[k] = gradient row of p_k
    std::vector<std::vector<cplx>> gp(n + 1, std::vector<cplx>(n * n, cplx(0.0)));
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s) gp[k][r * n + s] = double(k) * pw[k - 1](s, r);

    std::vector<cplx> e(n + 1, cplx(0.0));
    e[0] = 1.0;
    std::vector<std::vector<cplx>> ge(n + 1, std::vector<cplx>(n * n, cplx(0.0)));

    Matrix jac(n, n * n);
    for (std::size_t j = 1; j <= n; ++j) {
        cplx acc = 0.0;
        std::vector<cplx> gacc(n * n, cplx(0.0));
        for (std::size_t i = 1; i <= j; ++i) {
            const double sign = (i % 2 == 1) ? 1.0 : -1.0;
            acc += sign * e[j - i] * ps[i];
            for (std::size_t t = 0; t < n * n; ++t)
                gacc[t] += sign * (ge[j - i][t] * ps[i] + e[j - i] * gp[i][t]);
        }
        e[j] = acc / double(j);
        for (std::size_t t = 0; t < n * n; ++t) {
            ge[j][t] = gacc[t] / double(j);
            jac(j - 1, t) = ge[j][t];
        }
    }
    return jac;
}

}  // namespace sbl
