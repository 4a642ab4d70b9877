#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "sbl/fibers.hpp"
#include "sbl/matrix.hpp"

namespace sbl {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Per-case seed derivation: reports stay independent of execution order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x9e3779b97f4a7c15ull));
}

/// Deterministic generator: the mt19937_64 stream is fixed by the
/// standard, and all value mappings below avoid the
/// implementation-defined std distributions, so identical seeds give
/// bit-identical samples on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }  // [0, 1)

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform() * double(hi - lo + 1));
    }

    cplx unit_disc(double radius) {
        const double r = radius * std::sqrt(uniform());
        const double a = 6.283185307179586476925286766559 * uniform();
        return std::polar(r, a);
    }

    cplx box(double half_width) { return {uniform(-half_width, half_width), uniform(-half_width, half_width)}; }

private:
    std::mt19937_64 eng_;
};

/// Product of n complex Householder reflections times a random diagonal
/// phase; unitary to rounding.
inline Matrix random_unitary(std::size_t n, Rng& rng) {
    Matrix q = Matrix::identity(n);
    for (std::size_t rep = 0; rep < n; ++rep) {
        std::vector<cplx> u(n);
        double nu2 = 0.0;
        do {
            for (auto& x : u) x = rng.box(1.0);
            nu2 = 0.0;
            for (const auto& x : u) nu2 += std::norm(x);
        } while (nu2 < 1e-8);
        // q -= (2/|u|^2) u (u^* q)
        std::vector<cplx> w(n, cplx(0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w[j] += std::conj(u[i]) * q(i, j);
        const double f = 2.0 / nu2;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) q(i, j) -= f * u[i] * w[j];
    }
    for (std::size_t i = 0; i < n; ++i) {
        const cplx phase = std::polar(1.0, 6.283185307179586 * rng.uniform());
        for (std::size_t j = 0; j < n; ++j) q(i, j) *= phase;
    }
    return q;
}

/// Random basis with condition number at most cond_bound: U1 D U2 with
/// unitary factors and log-uniform diagonal scaling.
inline Matrix random_basis(std::size_t n, double cond_bound, Rng& rng) {
    require(cond_bound >= 1.0, "random_basis: cond_bound >= 1 required");
    Matrix u1 = random_unitary(n, rng);
    Matrix u2 = random_unitary(n, rng);
    const double half = 0.5 * std::log(cond_bound);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::exp(rng.uniform(-half, half));
        for (std::size_t j = 0; j < n; ++j) u2(i, j) *= d;
    }
    return u1 * u2;
}

enum class SpecKind {
    Any,            ///< unconstrained random block structure
    Nonderogatory,  ///< one block per distinct eigenvalue
    Derogatory,     ///< at least one eigenvalue with >= 2 blocks
    NilpotentChain  ///< single eigenvalue 0 with a chain of length >= 2
};

struct SampleOptions {
    double radius = 0.9;
    double cond_bound = 20.0;
    /// Minimum separation between distinct eigenvalues. Rank-sequence
    /// structure recovery degrades as separation^k for k-th powers, so
    /// samples keep distinct eigenvalues well apart.
    double min_separation = 0.25;
};

namespace detail {

inline std::vector<cplx> separated_eigenvalues(int count, double radius, double min_sep,
                                               Rng& rng) {
    std::vector<cplx> out;
    double sep = min_sep;
    int failures = 0;
    while (static_cast<int>(out.size()) < count) {
        const cplx cand = rng.unit_disc(radius);
        bool ok = true;
        for (const cplx& z : out)
            if (std::abs(z - cand) < sep) {
                ok = false;
                break;
            }
        if (ok) {
            out.push_back(cand);
            failures = 0;
        } else if (++failures > 200) {
            sep *= 0.5;  // keep the sampler total; dense requests relax gradually
            failures = 0;
        }
    }
    return out;
}

inline std::vector<int> random_composition(int total, int parts, Rng& rng) {
    std::vector<int> out;
    int remaining = total;
    for (int i = 0; i < parts; ++i) {
        const int left = parts - i - 1;
        const int hi = remaining - left;
        const int v = (i == parts - 1) ? remaining : rng.uniform_int(1, hi);
        out.push_back(v);
        remaining -= v;
    }
    return out;
}

inline std::vector<int> random_partition(int total, Rng& rng) {
    std::vector<int> parts;
    int remaining = total;
    while (remaining > 0) {
        const int p = rng.uniform_int(1, remaining);
        parts.push_back(p);
        remaining -= p;
    }
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return parts;
}

}  // namespace detail

inline JordanSpec random_spec(int n, Rng& rng, const SampleOptions& opts,
                              SpecKind kind = SpecKind::Any) {
    require(n >= 2, "random_spec: n >= 2 required");
    JordanSpec spec;

    if (kind == SpecKind::NilpotentChain) {
        std::vector<int> sizes;
        sizes.push_back(rng.uniform_int(2, n));
        int remaining = n - sizes[0];
        while (remaining > 0) {
            const int p = rng.uniform_int(1, remaining);
            sizes.push_back(p);
            remaining -= p;
        }
        std::sort(sizes.begin(), sizes.end(), std::greater<int>());
        spec.groups.push_back({cplx(0.0), std::move(sizes)});
        return spec;
    }

    int distinct = rng.uniform_int(1, n);
    if (kind == SpecKind::Derogatory && distinct == n) distinct = n - 1;  // need a mult >= 2

    std::vector<int> mults = detail::random_composition(n, distinct, rng);
    if (kind == SpecKind::Derogatory) {
        // ensure the first group has algebraic multiplicity >= 2
        std::sort(mults.begin(), mults.end(), std::greater<int>());
    }
    const std::vector<cplx> evs =
        detail::separated_eigenvalues(distinct, opts.radius, opts.min_separation, rng);

    for (int i = 0; i < distinct; ++i) {
        std::vector<int> sizes;
        switch (kind) {
            case SpecKind::Nonderogatory:
                sizes = {mults[static_cast<std::size_t>(i)]};
                break;
            case SpecKind::Derogatory:
                if (i == 0) {
                    const int m = mults[0];
                    const int first = rng.uniform_int(1, m - 1);
                    sizes = {first, m - first};
                    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
                } else {
                    sizes = detail::random_partition(mults[static_cast<std::size_t>(i)], rng);
                }
                break;
            case SpecKind::Any:
            default:
                sizes = detail::random_partition(mults[static_cast<std::size_t>(i)], rng);
                break;
        }
        spec.groups.push_back({evs[static_cast<std::size_t>(i)], std::move(sizes)});
    }
    return spec;
}

struct OmegaSample {
    Matrix A;
    JordanRealization realization;
};

/// Deterministic-per-seed sample of the spectral unit ball: eigenvalues in
/// the disc of the given radius, random block structure, random basis of
/// bounded condition number. Membership holds by construction.
inline OmegaSample sample_in_omega(int n, std::uint64_t seed, const SampleOptions& opts = {},
                                   SpecKind kind = SpecKind::Any) {
    Rng rng(seed);
    const JordanSpec spec = random_spec(n, rng, opts, kind);
    const Matrix basis = random_basis(static_cast<std::size_t>(n), opts.cond_bound, rng);
    auto [a, r] = jordan_assemble(spec, basis);
    return {std::move(a), std::move(r)};
}

inline Matrix random_in_omega(int n, std::uint64_t seed, double radius = 0.9,
                              double cond_bound = 20.0) {
    SampleOptions opts;
    opts.radius = radius;
    opts.cond_bound = cond_bound;
    return sample_in_omega(n, seed, opts).A;
}

/// Non-derogatory sample of the fiber over pi_n(zetas): one chain per
/// distinct prescribed value, random basis.
inline OmegaSample sample_in_fiber(const std::vector<cplx>& zetas, std::uint64_t seed,
                                   double cond_bound = 20.0) {
    require(!zetas.empty(), "sample_in_fiber: empty tuple");
    for (const cplx& z : zetas)
        require(std::abs(z) < 1.0, "sample_in_fiber: zetas must lie in the open unit disc");

    JordanSpec spec;
    for (const cplx& z : zetas) {
        bool found = false;
        for (auto& g : spec.groups)
            if (g.eigenvalue == z) {
                g.sizes[0] += 1;
                found = true;
                break;
            }
        if (!found) spec.groups.push_back({z, {1}});
    }
    Rng rng(seed);
    const Matrix basis = random_basis(zetas.size(), cond_bound, rng);
    auto [a, r] = jordan_assemble(spec, basis);
    return {std::move(a), std::move(r)};
}

inline Matrix random_in_fiber(const std::vector<cplx>& zetas, std::uint64_t seed) {
    return sample_in_fiber(zetas, seed).A;
}

}  // namespace sbl
