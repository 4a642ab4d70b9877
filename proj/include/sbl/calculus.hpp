#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "sbl/fibers.hpp"
#include "sbl/geometry.hpp"
#include "sbl/matrix.hpp"

namespace sbl {

/// Truncated Taylor expansion at a point: value plus derivatives up to a
/// fixed order, carried as Taylor coefficients t_k = f^(k)/k!. Jets
/// compose through sums, products and quotients, which is all the disc
/// map evaluation below needs.
class Jet {
public:
    Jet(cplx center, std::vector<cplx> taylor) : center_(center), t_(std::move(taylor)) {
        require(!t_.empty(), "jet: order >= 1 required");
    }

    static Jet variable(cplx at, int order) {
        require(order >= 1, "jet: order >= 1 required");
        std::vector<cplx> t(static_cast<std::size_t>(order), cplx(0.0));
        t[0] = at;
        if (order >= 2) t[1] = 1.0;
        return Jet(at, std::move(t));
    }

    static Jet constant(cplx value, cplx at, int order) {
        require(order >= 1, "jet: order >= 1 required");
        std::vector<cplx> t(static_cast<std::size_t>(order), cplx(0.0));
        t[0] = value;
        return Jet(at, std::move(t));
    }

    int order() const { return static_cast<int>(t_.size()); }
    cplx center() const { return center_; }
    cplx value() const { return t_[0]; }
    cplx taylor(int k) const { return t_[static_cast<std::size_t>(k)]; }

    cplx derivative(int k) const {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= double(i);
        return t_[static_cast<std::size_t>(k)] * fact;
    }

    /// (f, f', ..., f^(m-1)) at the center.
    std::vector<cplx> derivatives() const {
        std::vector<cplx> d(t_.size());
        double fact = 1.0;
        for (std::size_t k = 0; k < t_.size(); ++k) {
            if (k >= 2) fact *= double(k);
            d[k] = t_[k] * fact;
        }
        return d;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r = a;
        for (std::size_t k = 0; k < r.t_.size(); ++k) r.t_[k] += b.t_[k];
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r = a;
        for (std::size_t k = 0; k < r.t_.size(); ++k) r.t_[k] -= b.t_[k];
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        std::vector<cplx> t(a.t_.size(), cplx(0.0));
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j + i < t.size(); ++j) t[i + j] += a.t_[i] * b.t_[j];
        return Jet(a.center_, std::move(t));
    }

    friend Jet operator*(cplx s, const Jet& a) {
        Jet r = a;
        for (cplx& v : r.t_) v *= s;
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        require(b.t_[0] != cplx(0.0), "jet division: vanishing denominator value");
        std::vector<cplx> t(a.t_.size());
        for (std::size_t k = 0; k < t.size(); ++k) {
            cplx s = a.t_[k];
            for (std::size_t j = 1; j <= k; ++j) s -= b.t_[j] * t[k - j];
            t[k] = s / b.t_[0];
        }
        return Jet(a.center_, std::move(t));
    }

private:
    cplx center_;
    std::vector<cplx> t_;
};

/// Disc automorphism factor e^{i theta} (z - c) / (1 - conj(c) z), |c| < 1.
struct Mobius {
    cplx c;
    double theta = 0.0;

    cplx operator()(cplx z) const {
        return std::polar(1.0, theta) * (z - c) / (1.0 - std::conj(c) * z);
    }

    Mobius inverse() const { return Mobius{-c * std::polar(1.0, theta), -theta}; }
};

/// Composition f(g(z)) of two disc automorphisms, again in standard form.
inline Mobius compose(const Mobius& f, const Mobius& g) {
    const cplx e2 = std::polar(1.0, g.theta);
    const cplx num_l = e2 + f.c * std::conj(g.c);   // coefficient of z in the numerator
    const cplx num_c = e2 * g.c + f.c;              // constant term (negated)
    const cplx den_c = 1.0 + std::conj(f.c) * g.c * e2;
    const cplx mu = std::polar(1.0, f.theta) * num_l / den_c;
    return Mobius{num_c / num_l, std::arg(mu)};
}

/// Holomorphic self-map of the unit disc: a Mobius automorphism, a finite
/// Blaschke product, or a power-series (polynomial) map. Mobius and
/// Blaschke map the disc into itself by construction; the series variant
/// is screened by boundary sampling (720 points at radius 0.99), a
/// heuristic check since disc self-mapping cannot be decided numerically.
class DiscMap {
public:
    struct Blaschke {
        std::vector<cplx> zeros;
        double theta = 0.0;
    };
    struct Series {
        std::vector<cplx> coeffs;
    };

    static DiscMap mobius(cplx c, double theta = 0.0) {
        require(is_finite(c) && std::abs(c) < 1.0, "mobius: |c| < 1 required");
        return DiscMap(Mobius{c, theta});
    }

    static DiscMap mobius(const Mobius& m) { return mobius(m.c, m.theta); }

    static DiscMap blaschke(std::vector<cplx> zeros, double theta = 0.0) {
        require(!zeros.empty(), "blaschke: at least one zero required");
        for (const cplx& a : zeros)
            require(is_finite(a) && std::abs(a) < 1.0, "blaschke: all zeros must satisfy |a| < 1");
        return DiscMap(Blaschke{std::move(zeros), theta});
    }

    static DiscMap series(std::vector<cplx> coeffs) {
        require(!coeffs.empty(), "series: empty coefficient list");
        for (const cplx& c : coeffs) require(is_finite(c), "series: non-finite coefficient");
        DiscMap m{Series{std::move(coeffs)}};
        constexpr int kSamples = 720;
        constexpr double kRadius = 0.99;
        for (int k = 0; k < kSamples; ++k) {
            const cplx z = std::polar(kRadius, 6.283185307179586 * double(k) / kSamples);
            require(std::abs(m.eval(z)) <= 1.0 + 1e-9,
                    "series: boundary samples exceed the unit disc");
        }
        return m;
    }

    static DiscMap identity() { return DiscMap(Series{{cplx(0.0), cplx(1.0)}}); }

    /// The squaring map as a Blaschke product with a double zero at 0.
    static DiscMap square() { return blaschke({cplx(0.0), cplx(0.0)}, 0.0); }

    cplx eval(cplx z) const {
        if (const auto* m = std::get_if<Mobius>(&v_)) return (*m)(z);
        if (const auto* b = std::get_if<Blaschke>(&v_)) {
            cplx r = std::polar(1.0, b->theta);
            for (const cplx& a : b->zeros) r *= (z - a) / (1.0 - std::conj(a) * z);
            return r;
        }
        const auto& s = std::get<Series>(v_);
        cplx r = s.coeffs.back();
        for (std::size_t k = s.coeffs.size() - 1; k > 0; --k) r = r * z + s.coeffs[k - 1];
        return r;
    }

    cplx operator()(cplx z) const { return eval(z); }

    /// Value and derivatives at a point of the open disc (jet arithmetic:
    /// the quotient denominators 1 - conj(a) z never vanish on D x D).
    Jet jet(cplx at, int order) const {
        require(std::abs(at) < 1.0, "eval_jet: |lambda| < 1 required");
        require(order >= 1, "eval_jet: order >= 1 required");
        const Jet z = Jet::variable(at, order);
        if (const auto* m = std::get_if<Mobius>(&v_)) {
            const Jet num = z - Jet::constant(m->c, at, order);
            const Jet den = Jet::constant(1.0, at, order) -
                            Jet::constant(std::conj(m->c), at, order) * z;
            return std::polar(1.0, m->theta) * (num / den);
        }
        if (const auto* b = std::get_if<Blaschke>(&v_)) {
            Jet r = Jet::constant(std::polar(1.0, b->theta), at, order);
            for (const cplx& a : b->zeros) {
                const Jet num = z - Jet::constant(a, at, order);
                const Jet den =
                    Jet::constant(1.0, at, order) - Jet::constant(std::conj(a), at, order) * z;
                r = r * (num / den);
            }
            return r;
        }
        const auto& s = std::get<Series>(v_);
        Jet r = Jet::constant(s.coeffs.back(), at, order);
        for (std::size_t k = s.coeffs.size() - 1; k > 0; --k)
            r = r * z + Jet::constant(s.coeffs[k - 1], at, order);
        return r;
    }

    /// Taylor coefficients at 0, c_j = f^(j)(0)/j!. Mobius and Blaschke
    /// expand through the factor recurrence y_k = conj(a) y_{k-1} + x_{k-1}
    /// - a x_k, so any count is cheap; series maps pad with zeros.
    std::vector<cplx> taylor(int count) const {
        require(count >= 1, "taylor: count >= 1 required");
        const std::size_t n = static_cast<std::size_t>(count);
        if (const auto* s = std::get_if<Series>(&v_)) {
            std::vector<cplx> c = s->coeffs;
            c.resize(n, cplx(0.0));
            if (c.size() > n) c.resize(n);
            return c;
        }
        std::vector<cplx> zeros;
        double theta = 0.0;
        if (const auto* m = std::get_if<Mobius>(&v_)) {
            zeros = {m->c};
            theta = m->theta;
        } else {
            const auto& b = std::get<Blaschke>(v_);
            zeros = b.zeros;
            theta = b.theta;
        }
        std::vector<cplx> x(n, cplx(0.0));
        x[0] = std::polar(1.0, theta);
        for (const cplx& a : zeros) {
            std::vector<cplx> y(n, cplx(0.0));
            const cplx ac = std::conj(a);
            for (std::size_t k = 0; k < n; ++k) {
                cplx v = -a * x[k];
                if (k > 0) v += ac * y[k - 1] + x[k - 1];
                y[k] = v;
            }
            x = std::move(y);
        }
        return x;
    }

    /// Uniform bound on |taylor coefficients|: 1 for genuine disc
    /// self-maps (Schur), observed maximum for series maps.
    double coeff_bound() const {
        if (const auto* s = std::get_if<Series>(&v_)) {
            double m = 1.0;
            for (const cplx& c : s->coeffs) m = std::max(m, std::abs(c));
            return m;
        }
        return 1.0;
    }

    bool fixes_origin(double tol = 1e-12) const { return std::abs(eval(0.0)) <= tol; }

    cplx origin_derivative() const { return jet(0.0, 2).derivative(1); }

    const char* kind() const {
        if (std::holds_alternative<Mobius>(v_)) return "mobius";
        if (std::holds_alternative<Blaschke>(v_)) return "blaschke";
        return "series";
    }

    const Mobius* as_mobius() const { return std::get_if<Mobius>(&v_); }
    const Blaschke* as_blaschke() const { return std::get_if<Blaschke>(&v_); }
    const Series* as_series() const { return std::get_if<Series>(&v_); }

private:
    template <typename V>
    explicit DiscMap(V v) : v_(std::move(v)) {}

    std::variant<Mobius, Blaschke, Series> v_;
};

/// f(A) by the defining Taylor series sum c_j A^j with a certified stop:
/// once some power satisfies ||A^m||_F <= 1/2, the tail obeys
/// sum_{k>N} |c_k| ||A^k|| <= 2 bound m max_{r<m}||A^r|| ||A^N||, which is
/// driven under tol before stopping. Exactly vanishing powers (nilpotent
/// input) terminate immediately.
inline Matrix apply_series(const DiscMap& f, const Matrix& A, double tol = 1e-9,
                           int max_terms = 10000) {
    const std::size_t n = A.dim();
    require(A.all_finite(), "apply_series: non-finite entries");
    require(tol > 0.0, "apply_series: tol must be positive");
    if (spectral_radius(A) >= 1.0)
        throw input_error("apply_series: spectral radius must be < 1");

    int have = std::min(max_terms + 1, 128);
    std::vector<cplx> c = f.taylor(have);
    const double cmax = f.coeff_bound();

    Matrix sum = Matrix::identity(n) * c[0];
    Matrix power = Matrix::identity(n);

    double prefix_max = std::sqrt(double(n));  // max ||A^r||_F over r < m*
    int contraction_at = -1;                   // first m with ||A^m||_F <= 1/2
    double tail = 0.0;

    for (int j = 1; j <= max_terms; ++j) {
        if (j >= have) {
            have = std::min(max_terms + 1, have * 2);
            c = f.taylor(have);
        }
        power = power * A;
        const double pn = power.frobenius_norm();
        if (c[static_cast<std::size_t>(j)] != cplx(0.0))
            sum += power * c[static_cast<std::size_t>(j)];

        if (pn == 0.0) return sum;  // exactly nilpotent: the series is finite
        if (contraction_at < 0) {
            if (pn <= 0.5)
                contraction_at = j;
            else
                prefix_max = std::max(prefix_max, pn);
        }
        if (contraction_at > 0) {
            tail = 2.0 * cmax * double(contraction_at) * prefix_max * pn;
            if (tail < tol) return sum;
        }
    }
    throw numerical_error("apply_series: no convergence within the term cap", tail);
}

/// f(A) by exact Hermite interpolation: match p^(k)(lambda_i) = f^(k)(lambda_i)
/// for k below the largest block size at each eigenvalue (Newton divided
/// differences with repeated nodes fed by jets), then evaluate p(A) in
/// Horner form. On a Jordan block the result carries f on the diagonal
/// and f' on the superdiagonal.
namespace detail {

inline Matrix hermite_apply(const DiscMap& f, const Matrix& A,
                            const std::vector<std::pair<cplx, int>>& nodes_with_mult) {
    std::vector<cplx> nodes;
    std::vector<cplx> taylor_rows;  // taylor(k) of the node's jet, aligned with nodes
    std::vector<std::size_t> group_start;
    std::vector<const Jet*> jet_ptr;  // not used; jets stored by value below

    std::vector<Jet> jets;
    jets.reserve(nodes_with_mult.size());
    for (const auto& [lambda, m] : nodes_with_mult) jets.push_back(f.jet(lambda, m));

    std::vector<std::size_t> owner;  // node index -> group index
    for (std::size_t g = 0; g < nodes_with_mult.size(); ++g) {
        for (int t = 0; t < nodes_with_mult[g].second; ++t) {
            nodes.push_back(nodes_with_mult[g].first);
            owner.push_back(g);
        }
    }
    const std::size_t N = nodes.size();

    // divided differences with repetition: equal nodes read Taylor data
    std::vector<std::vector<cplx>> dd(N, std::vector<cplx>(N, cplx(0.0)));
    for (std::size_t i = 0; i < N; ++i) dd[i][0] = jets[owner[i]].value();
    for (std::size_t k = 1; k < N; ++k) {
        for (std::size_t i = 0; i + k < N; ++i) {
            if (nodes[i] == nodes[i + k] && owner[i] == owner[i + k]) {
                dd[i][k] = jets[owner[i]].taylor(static_cast<int>(k));
            } else {
                dd[i][k] = (dd[i + 1][k - 1] - dd[i][k - 1]) / (nodes[i + k] - nodes[i]);
            }
        }
    }

    const std::size_t n = A.dim();
    Matrix result = Matrix::identity(n) * dd[0][N - 1];
    for (std::size_t kk = N - 1; kk > 0; --kk) {
        const std::size_t k = kk - 1;
        Matrix shifted = A;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= nodes[k];
        result = result * shifted;
        for (std::size_t i = 0; i < n; ++i) result(i, i) += dd[0][k];
    }
    return result;
}

}  // namespace detail

inline Matrix apply_exact(const DiscMap& f, const Matrix& A, StructureTols tols = {}) {
    EigenStructure st;
    try {
        st = eigen_structure(A, tols);
    } catch (const numerical_error& e) {
        throw numerical_error(std::string("apply_exact: eigenstructure unresolved (") + e.what() +
                              "); consider apply_series");
    }
    std::vector<std::pair<cplx, int>> nodes;
    for (const auto& cl : st.clusters) {
        require(std::abs(cl.center) < 1.0, "apply_exact: spectrum must lie in the open disc");
        nodes.emplace_back(cl.center, cl.block_sizes.front());
    }
    return detail::hermite_apply(f, A, nodes);
}

/// Exact functional calculus on a known realization: interpolation nodes
/// come from the spec, no numerical structure recovery involved.
inline Matrix apply_exact(const DiscMap& f, const JordanRealization& r) {
    r.spec.validate();
    std::vector<std::pair<cplx, int>> nodes;
    for (const auto& g : r.spec.groups) {
        require(std::abs(g.eigenvalue) < 1.0, "apply_exact: spectrum must lie in the open disc");
        nodes.emplace_back(g.eigenvalue, g.sizes.front());
    }
    return detail::hermite_apply(f, realize(r), nodes);
}

/// Known automorphism of the spectral ball: conjugation, optional
/// transposition, and a Mobius map applied through the exact calculus.
struct OmegaAut {
    Mobius mobius;
    Matrix conjugator;
    bool transpose_flag = false;

    OmegaAut inverse() const {
        Matrix conj_inv;
        if (transpose_flag) {
            conj_inv = conjugator.transpose();
        } else {
            try {
                conj_inv = sbl::inverse(conjugator);
            } catch (const numerical_error&) {
                throw input_error("omega automorphism: conjugator singular to tolerance");
            }
        }
        return OmegaAut{mobius.inverse(), std::move(conj_inv), transpose_flag};
    }
};

inline Matrix omega_automorphism(const OmegaAut& aut, const Matrix& A,
                                 StructureTols tols = {}) {
    require(aut.conjugator.is_square() && aut.conjugator.rows() == A.dim(),
            "omega_automorphism: conjugator dimension mismatch");
    if (spectral_radius(A) >= 1.0)
        throw input_error("omega_automorphism: matrix outside the spectral unit ball");
    const Matrix inner = aut.transpose_flag ? A.transpose() : A;
    const Matrix mapped = apply_exact(DiscMap::mobius(aut.mobius), inner, tols);
    Matrix conj_inv;
    try {
        conj_inv = inverse(aut.conjugator);
    } catch (const numerical_error&) {
        throw input_error("omega_automorphism: conjugator singular to tolerance");
    }
    return aut.conjugator * mapped * conj_inv;
}

enum class CalcMethod { Exact, Series };

/// The central verification scalar of the equivariance condition:
/// || sigma(F_f(A)) - pi_n(f(lambda_1), ..., f(lambda_n)) ||_inf with the
/// lambda_i the computed eigenvalues of A. A realization, when available,
/// feeds the exact calculus the true block structure.
inline double equivariance_residual(const DiscMap& f, const Matrix& A,
                                    CalcMethod method = CalcMethod::Exact,
                                    const JordanRealization* realization = nullptr,
                                    double series_tol = 1e-9) {
    if (spectral_radius(A) >= 1.0)
        throw input_error("equivariance_residual: matrix outside the spectral unit ball");

    std::vector<cplx> mapped;
    for (const cplx& ev : eigenvalues(A)) mapped.push_back(f.eval(ev));
    const SymPoint rhs = pi_n(mapped);

    Matrix fa = (method == CalcMethod::Series)
                    ? apply_series(f, A, series_tol)
                    : (realization ? apply_exact(f, *realization) : apply_exact(f, A));
    return sym_distance(sigma(fa), rhs);
}

/// Normalized differential Phi(V) ~ F_f(hV)/(alpha h) of the calculus map
/// at 0, Richardson-extrapolated over h and h/2 so the O(h) term cancels.
/// Requires f(0) = 0 and alpha = f'(0) != 0; the result preserves sigma up
/// to O(h^2) and, assembled over a basis of matrix space, has full rank.
inline Matrix lemma3_normalized_differential(const DiscMap& f, const Matrix& V,
                                             double h = 1e-4) {
    require(h > 0.0, "lemma3_normalized_differential: h must be positive");
    require(V.all_finite(), "lemma3_normalized_differential: non-finite entries");
    require(f.fixes_origin(), "lemma3_normalized_differential: map must fix the origin");
    const cplx alpha = f.origin_derivative();
    require(std::abs(alpha) > 1e-12,
            "lemma3_normalized_differential: derivative at the origin vanishes");

    const double vn = V.frobenius_norm();
    require(h * vn < 0.5, "lemma3_normalized_differential: step too large for this direction");

    auto phi = [&](double step) {
        const Matrix scaled = V * cplx(step);
        const Matrix image = apply_series(f, scaled, 1e-13 * std::abs(alpha) * step);
        return image * (1.0 / (alpha * step));
    };
    const Matrix coarse = phi(h);
    const Matrix fine = phi(h / 2.0);
    return fine * 2.0 - coarse;
}

}  // namespace sbl
