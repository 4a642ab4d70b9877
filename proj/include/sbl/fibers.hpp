#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "sbl/geometry.hpp"
#include "sbl/linalg.hpp"
#include "sbl/matrix.hpp"
#include "sbl/spectrum.hpp"

namespace sbl {

/// Jordan data at one eigenvalue: block sizes sorted descending.
struct JordanBlockGroup {
    cplx eigenvalue;
    std::vector<int> sizes;
};

/// Eigenvalues with block sizes; total size is the matrix dimension and
/// group eigenvalues are pairwise distinct.
struct JordanSpec {
    std::vector<JordanBlockGroup> groups;

    int dimension() const {
        int n = 0;
        for (const auto& g : groups)
            for (int s : g.sizes) n += s;
        return n;
    }

    void validate() const {
        require(!groups.empty(), "jordan spec: empty");
        for (const auto& g : groups) {
            require(is_finite(g.eigenvalue), "jordan spec: non-finite eigenvalue");
            require(!g.sizes.empty(), "jordan spec: group without blocks");
            for (std::size_t i = 0; i < g.sizes.size(); ++i) {
                require(g.sizes[i] >= 1, "jordan spec: nonpositive block size");
                if (i > 0)
                    require(g.sizes[i] <= g.sizes[i - 1], "jordan spec: sizes must descend");
            }
        }
        for (std::size_t a = 0; a < groups.size(); ++a)
            for (std::size_t b = a + 1; b < groups.size(); ++b)
                require(groups[a].eigenvalue != groups[b].eigenvalue,
                        "jordan spec: repeated eigenvalue across groups");
    }

    /// Eigenvalues with multiplicity, in group order.
    std::vector<cplx> eigenvalue_list() const {
        std::vector<cplx> out;
        for (const auto& g : groups)
            for (int s : g.sizes) out.insert(out.end(), static_cast<std::size_t>(s), g.eigenvalue);
        return out;
    }

    bool nonderogatory() const {
        for (const auto& g : groups)
            if (g.sizes.size() != 1) return false;
        return true;
    }

    int blocks_at(std::size_t group) const { return static_cast<int>(groups[group].sizes.size()); }
};

/// Upper-bidiagonal Jordan matrix of a spec: within a chain of length m,
/// J v_t = lambda v_t + v_{t-1}, the chain start being an eigenvector.
inline Matrix jordan_matrix(const JordanSpec& spec) {
    spec.validate();
    const std::size_t n = static_cast<std::size_t>(spec.dimension());
    Matrix j(n, n);
    std::size_t off = 0;
    for (const auto& g : spec.groups) {
        for (int size : g.sizes) {
            for (int t = 0; t < size; ++t) {
                j(off + t, off + t) = g.eigenvalue;
                if (t > 0) j(off + t - 1, off + t) = 1.0;
            }
            off += static_cast<std::size_t>(size);
        }
    }
    return j;
}

/// A spec together with an explicit chain basis realizing it.
struct JordanRealization {
    JordanSpec spec;
    Matrix basis;  // columns are the chain vectors, in spec order
};

inline Matrix realize(const JordanRealization& r) {
    return r.basis * jordan_matrix(r.spec) * inverse(r.basis);
}

/// Assemble A = S J(spec) S^{-1}. Throws input_error on a singular basis.
inline std::pair<Matrix, JordanRealization> jordan_assemble(const JordanSpec& spec,
                                                            const Matrix& basis) {
    spec.validate();
    const std::size_t n = static_cast<std::size_t>(spec.dimension());
    require(basis.is_square() && basis.rows() == n, "jordan_assemble: basis dimension mismatch");
    require(basis.all_finite(), "jordan_assemble: non-finite basis");
    Matrix basis_inv;
    try {
        basis_inv = inverse(basis);
    } catch (const numerical_error&) {
        throw input_error("jordan_assemble: basis is singular to working tolerance");
    }
    Matrix a = basis * jordan_matrix(spec) * basis_inv;
    return {a, JordanRealization{spec, basis}};
}

struct EigenCluster {
    cplx center;
    int algebraic = 0;
    std::vector<int> weyr;         // w_k = rank((A - c I)^{k-1}) - rank((A - c I)^k)
    std::vector<int> block_sizes;  // conjugate partition of weyr, descending
};

/// Clustered spectrum with per-cluster Jordan block sizes recovered from
/// rank sequences. Chain vectors are never computed; rank-of-powers is far
/// better conditioned than numerical eigenvector chains.
struct EigenStructure {
    std::vector<EigenCluster> clusters;

    bool nonderogatory() const {
        for (const auto& c : clusters)
            if (c.block_sizes.size() != 1) return false;
        return true;
    }
};

struct StructureTols {
    double cluster_tol = 0.0;  // 0 selects 1e-7 * max(1, ||A||_F)
    double rank_tol = 1e-9;
    double root_tol = 1e-12;
};

/// Eigenvalues clustered by transitive closure of |a - b| < cluster_tol;
/// per cluster the Weyr sequence of (A - center I)^k yields the block
/// sizes (number of blocks of size >= k equals r_{k-1} - r_k). Throws
/// numerical_error, advising larger tolerances, when the recovered
/// structure is inconsistent with the algebraic multiplicities.
inline EigenStructure eigen_structure(const Matrix& A, StructureTols tols = {}) {
    const std::size_t n = A.dim();
    const double ctol =
        tols.cluster_tol > 0.0 ? tols.cluster_tol : 1e-7 * std::max(1.0, A.frobenius_norm());

    const std::vector<cplx> evs = eigenvalues(A, tols.root_tol);

    // transitive-closure clustering (union-find over all pairs)
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(evs[i] - evs[j]) < ctol) {
                const std::size_t a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }

    EigenStructure out;
    for (std::size_t root = 0; root < n; ++root) {
        if (find(root) != root) continue;
        cplx center = 0.0;
        int mult = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (find(i) == root) {
                center += evs[i];
                ++mult;
            }
        center /= double(mult);

        EigenCluster cl;
        cl.center = center;
        cl.algebraic = mult;

        Matrix shifted = A;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= center;

        Matrix power = shifted;
        int r_prev = static_cast<int>(n);
        int total = 0;
        for (int k = 1; k <= mult && total < mult; ++k) {
            const int r_k = rank(power, tols.rank_tol);
            const int w = r_prev - r_k;
            if (w <= 0) break;
            if (!cl.weyr.empty() && w > cl.weyr.back())
                throw numerical_error(
                    "eigen_structure: Weyr sequence not monotone; try larger tolerances");
            cl.weyr.push_back(w);
            total += w;
            r_prev = r_k;
            if (total < mult) power = power * shifted;
        }
        if (total != mult)
            throw numerical_error(
                "eigen_structure: block sizes inconsistent with multiplicity; try larger "
                "tolerances");

        for (int i = 1; i <= cl.weyr.front(); ++i) {
            int size = 0;
            for (int w : cl.weyr)
                if (w >= i) ++size;
            cl.block_sizes.push_back(size);
        }
        out.clusters.push_back(std::move(cl));
    }
    return out;
}

/// True iff every eigenvalue carries a single Jordan block (all
/// eigenspaces one-dimensional).
inline bool is_nonderogatory(const Matrix& A, StructureTols tols = {}) {
    return eigen_structure(A, tols).nonderogatory();
}

/// The Jacobian characterization: non-derogatory iff rank sigma'(A) = n,
/// the largest possible value. Cross-validates is_nonderogatory on
/// well-separated structures.
inline bool nonderogatory_via_jacobian(const Matrix& A, double rank_tol = 1e-9) {
    return rank(sigma_jacobian(A), rank_tol) == static_cast<int>(A.dim());
}

/// Dimension of ker sigma'(A): n^2 - n exactly at non-derogatory points
/// (the fiber is a submanifold of that dimension there), larger at
/// singular points such as A = 0.
inline int fiber_tangent_dim(const Matrix& A, double rank_tol = 1e-9) {
    const int n = static_cast<int>(A.dim());
    return n * n - rank(sigma_jacobian(A), rank_tol);
}

/// The non-derogatory element of the fiber over pi_n(zetas) determined by
/// a basis: equal zetas are grouped (exact equality, first occurrence
/// order) and each distinct value contributes one chain whose length is
/// its multiplicity.
inline Matrix lemma6_sample(const std::vector<cplx>& zetas, const Matrix& basis) {
    require(!zetas.empty(), "lemma6_sample: empty tuple");
    for (const cplx& z : zetas) {
        require(is_finite(z), "lemma6_sample: non-finite entry");
        require(std::abs(z) < 1.0, "lemma6_sample: all zetas must lie in the open unit disc");
    }
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
    return jordan_assemble(spec, basis).first;
}

/// One merge step of the density construction: at an eigenvalue carrying
/// blocks of sizes k >= l (the two largest), redefine B v_1 = lambda v_1
/// + eps w_l and keep every other chain image. The two blocks fuse into a
/// single chain of length k + l — in the new basis
/// (eps w_1, ..., eps w_l, v_1, ..., v_k) — so sigma is preserved and the
/// geometric multiplicity drops by exactly one. The realized displacement
/// ||B - A|| scales with eps times the basis distortion; callers read it
/// off the realizations rather than being promised a bound.
inline JordanRealization lemma5_perturb(const JordanRealization& r, cplx eigenvalue,
                                        double epsilon) {
    require(epsilon > 0.0, "lemma5_perturb: epsilon must be positive");
    r.spec.validate();

    std::size_t gi = r.spec.groups.size();
    for (std::size_t i = 0; i < r.spec.groups.size(); ++i)
        if (std::abs(r.spec.groups[i].eigenvalue - eigenvalue) <= 1e-9) {
            gi = i;
            break;
        }
    require(gi < r.spec.groups.size(), "lemma5_perturb: eigenvalue not in spec");
    const JordanBlockGroup& g = r.spec.groups[gi];
    require(g.sizes.size() >= 2, "lemma5_perturb: eigenvalue carries a single block");

    const int k = g.sizes[0], l = g.sizes[1];
    std::size_t off = 0;
    for (std::size_t i = 0; i < gi; ++i)
        for (int s : r.spec.groups[i].sizes) off += static_cast<std::size_t>(s);
    // v-chain occupies [off, off+k), w-chain [off+k, off+k+l)

    Matrix basis = r.basis;
    const std::size_t n = basis.rows();
    for (int t = 0; t < l; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            basis(i, off + static_cast<std::size_t>(t)) =
                epsilon * r.basis(i, off + static_cast<std::size_t>(k + t));
    }
    for (int t = 0; t < k; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            basis(i, off + static_cast<std::size_t>(l + t)) =
                r.basis(i, off + static_cast<std::size_t>(t));
    }

    JordanSpec spec = r.spec;
    std::vector<int> sizes;
    sizes.push_back(k + l);
    sizes.insert(sizes.end(), g.sizes.begin() + 2, g.sizes.end());
    spec.groups[gi].sizes = std::move(sizes);
    return JordanRealization{std::move(spec), std::move(basis)};
}

/// The n^2 - n + 1 linearly independent members of the nilpotent cone:
/// every off-diagonal elementary matrix plus the rank-one matrix with
/// entries (1, -1; 1, -1) in the leading 2x2 corner. All have sigma = 0
/// exactly.
inline std::vector<Matrix> t0_spanning_set(int n) {
    require(n >= 2, "t0_spanning_set: n >= 2 required");
    const std::size_t un = static_cast<std::size_t>(n);
    std::vector<Matrix> out;
    out.reserve(un * un - un + 1);
    for (std::size_t r = 0; r < un; ++r)
        for (std::size_t c = 0; c < un; ++c)
            if (r != c) out.push_back(Matrix::unit(un, r, c));
    Matrix m(un, un);
    m(0, 0) = 1.0;
    m(0, 1) = -1.0;
    m(1, 0) = 1.0;
    m(1, 1) = -1.0;
    out.push_back(std::move(m));
    return out;
}

/// Witness pair for the nonvanishing argument on the nilpotent cone.
struct Lemma4Witness {
    Matrix V;      // V v_2 = v_1, V v_1 = v_2, V v_j = 0 for j >= 3
    Matrix basis;  // columns v_1, ..., v_n
};

/// For nilpotent A != 0, find v_1 = A v_2 != 0 with A v_1 ~ 0 from the top
/// of a longest chain (v_2 maximizes ||A v_2|| over standard-basis
/// candidates at the top grade, ties to the lowest index), complete
/// {v_1, v_2} to a basis by pivoted elimination and return the swap
/// operator V. By construction (A + zeta V)^2 v_j = zeta (1 + zeta) v_j
/// for j = 1, 2, which forces |zeta||1+zeta| <= rho((A+zeta V)^2)
/// <= rho^2(A + zeta V).
inline Lemma4Witness lemma4_witness(const Matrix& A, double sigma_tol = 1e-8,
                                    double rank_tol = 1e-9) {
    const std::size_t n = A.dim();
    require(n >= 2, "lemma4_witness: n >= 2 required");
    require(A.all_finite(), "lemma4_witness: non-finite entries");

    const double scale = std::max(1.0, A.frobenius_norm());
    require(A.max_abs() > 1e-14 * scale, "lemma4_witness: matrix is numerically zero");

    const SymPoint s = sigma(A);
    double sp = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        sp *= scale;
        require(std::abs(s.z[j]) <= sigma_tol * sp,
                "lemma4_witness: sigma(A) is not numerically zero");
    }

    // nilpotency index m: first power with numerical rank 0
    std::vector<Matrix> powers{Matrix::identity(n), A};
    std::size_t m = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (rank(powers[k], rank_tol) == 0) {
            m = k;
            break;
        }
        if (k < n) powers.push_back(powers[k] * A);
    }
    require(m >= 2, "lemma4_witness: no chain of length >= 2 found");

    const Matrix& top = powers[m - 1];  // A^{m-1}, nonzero
    std::size_t best_j = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = vec_norm(top.column(j));
        if (v > best) {  // strict: ties resolve to the lowest index
            best = v;
            best_j = j;
        }
    }

    std::vector<cplx> v2 = powers[m - 2].column(best_j);
    const double nv2 = vec_norm(v2);
    for (cplx& x : v2) x /= nv2;
    const std::vector<cplx> v1 = A * v2;  // A v_2 = v_1 exactly as stored

    Matrix basis(n, n);
    basis.set_column(0, v1);
    basis.set_column(1, v2);
    std::size_t have = 2;
    for (std::size_t j = 0; j < n && have < n; ++j) {
        Matrix trial(n, have + 1);
        for (std::size_t col = 0; col < have; ++col)
            for (std::size_t i = 0; i < n; ++i) trial(i, col) = basis(i, col);
        for (std::size_t i = 0; i < n; ++i) trial(i, have) = (i == j) ? 1.0 : 0.0;
        if (rank(trial, rank_tol) == static_cast<int>(have + 1)) {
            for (std::size_t i = 0; i < n; ++i) basis(i, have) = (i == j) ? 1.0 : 0.0;
            ++have;
        }
    }
    require(have == n, "lemma4_witness: chain vectors could not be completed to a basis");

    Matrix swap12(n, n);
    swap12(0, 1) = 1.0;
    swap12(1, 0) = 1.0;
    Matrix v = basis * swap12 * inverse(basis);
    return Lemma4Witness{std::move(v), std::move(basis)};
}

}  // namespace sbl
