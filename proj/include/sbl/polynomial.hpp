#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "sbl/types.hpp"

namespace sbl {

/// Univariate complex polynomial, coefficients stored in ascending degree.
/// The leading coefficient is kept nonzero (exact trailing zeros are
/// trimmed on construction); the all-zero polynomial is rejected.
class Polynomial {
public:
    explicit Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
        require(!c_.empty(), "polynomial: empty coefficient list");
        for (const cplx& v : c_) require(is_finite(v), "polynomial: non-finite coefficient");
        while (c_.size() > 1 && c_.back() == cplx(0.0)) c_.pop_back();
        require(c_.back() != cplx(0.0), "polynomial: zero polynomial not representable");
    }

    /// Monic polynomial with the given roots (empty list gives the constant 1).
    static Polynomial from_roots(const std::vector<cplx>& roots) {
        std::vector<cplx> c{1.0};
        for (const cplx& r : roots) {
            c.push_back(0.0);
            for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
            c[0] = -r * c[0];
        }
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx(0.0);
    }

    cplx operator()(cplx z) const {
        cplx v = c_.back();
        for (std::size_t k = c_.size() - 1; k > 0; --k) v = v * z + c_[k - 1];
        return v;
    }

    std::pair<cplx, cplx> eval_with_derivative(cplx z) const {
        cplx v = c_.back(), dv = 0.0;
        for (std::size_t k = c_.size() - 1; k > 0; --k) {
            dv = dv * z + v;
            v = v * z + c_[k - 1];
        }
        return {v, dv};
    }

    Polynomial derivative() const {
        require(degree() >= 1, "derivative: positive degree required");
        std::vector<cplx> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
        return Polynomial(std::move(d));
    }

    Polynomial monic() const {
        std::vector<cplx> c = c_;
        const cplx lead = c.back();
        for (cplx& v : c) v /= lead;
        c.back() = 1.0;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, cplx(0.0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }

private:
    std::vector<cplx> c_;
};

namespace detail {

inline bool cplx_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace detail

/// All roots with multiplicity by simultaneous Aberth-Ehrlich iteration.
///
/// Exact zero roots are deflated first (this covers characteristic
/// polynomials of exactly nilpotent matrices without iteration). The
/// remaining roots are seeded on a circle of radius 1 + max|coeff| with a
/// fixed angular offset and iterated until the corrections stall at
/// rounding level, so clustered (multiple) roots settle onto the exact
/// roots of a nearby polynomial and their symmetric functions reproduce
/// the coefficients to machine accuracy.
///
/// Each returned root satisfies |p(z)| / max(1, sum_j |c_j||z|^j) < tol;
/// otherwise a numerical_error carrying the worst residual is thrown.
/// Output is sorted by (re, im) for reproducibility.
inline std::vector<cplx> poly_roots(const Polynomial& p, double tol = 1e-12) {
    require(p.degree() >= 1, "poly_roots: degree >= 1 required");
    require(tol > 0.0, "poly_roots: tol must be positive");

    std::vector<cplx> c = p.monic().coeffs();
    std::vector<cplx> roots;

    while (c.size() > 1 && c.front() == cplx(0.0)) {
        roots.push_back(0.0);
        c.erase(c.begin());
    }

    const std::size_t d = c.size() - 1;
    if (d == 0) {
        std::sort(roots.begin(), roots.end(), detail::cplx_less);
        return roots;
    }
    if (d == 1) {
        roots.push_back(-c[0]);
        std::sort(roots.begin(), roots.end(), detail::cplx_less);
        return roots;
    }

    double cmax = 0.0;
    for (const cplx& v : c) cmax = std::max(cmax, std::abs(v));
    const double radius = 1.0 + cmax;

    std::vector<cplx> z(d);
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (std::size_t k = 0; k < d; ++k) {
        const double angle = kTwoPi * double(k) / double(d) + 0.4;
        z[k] = std::polar(radius, angle);
    }

    auto eval2 = [&c](cplx x) {
        cplx v = c.back(), dv = 0.0;
        for (std::size_t k = c.size() - 1; k > 0; --k) {
            dv = dv * x + v;
            v = v * x + c[k - 1];
        }
        return std::pair<cplx, cplx>(v, dv);
    };

    const int max_iter = 1000;
    int calm_sweeps = 0;
    for (int iter = 0; iter < max_iter; ++iter) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            auto [v, dv] = eval2(z[k]);
            if (v == cplx(0.0)) continue;
            cplx w;
            if (dv == cplx(0.0)) {
                w = std::pow(v, 1.0 / double(d));  // degenerate start, nudge off
            } else {
                w = v / dv;
            }
            cplx s = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                if (j == k) continue;
                cplx diff = z[k] - z[j];
                if (diff == cplx(0.0)) diff = cplx(1e-20, 1e-20);
                s += 1.0 / diff;
            }
            const cplx denom = 1.0 - w * s;
            const cplx step = (std::abs(denom) < 1e-290) ? w : w / denom;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (max_step < 1e-14) {
            if (++calm_sweeps >= 2) break;
        } else {
            calm_sweeps = 0;
        }
    }

    double worst = 0.0;
    for (const cplx& r : z) {
        double scale = 0.0, pw = 1.0;
        const double ar = std::abs(r);
        for (const cplx& v : c) {
            scale += std::abs(v) * pw;
            pw *= ar;
        }
        worst = std::max(worst, std::abs(eval2(r).first) / std::max(1.0, scale));
    }
    if (worst > tol)
        throw numerical_error("poly_roots: no convergence to requested tolerance", worst);

    roots.insert(roots.end(), z.begin(), z.end());
    std::sort(roots.begin(), roots.end(), detail::cplx_less);
    return roots;
}

}  // namespace sbl
