#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hopf.hpp"

namespace frd {

enum class Family { AdditiveGroup, Torus, Unitriangular, GL, BorelGL2 };

/// An infinitesimal group scheme of height r from the catalog.
/// nd is the rank d for AdditiveGroup/Torus and the matrix size n for
/// Unitriangular/GL; ignored for BorelGL2.
struct GroupSchemeSpec {
    Family family = Family::AdditiveGroup;
    uint32_t nd = 1;
    uint32_t p = 3;
    uint32_t r = 1;
};

inline std::string family_name(Family f) {
    switch (f) {
        case Family::AdditiveGroup: return "ga";
        case Family::Torus: return "torus";
        case Family::Unitriangular: return "u";
        case Family::GL: return "gl";
        case Family::BorelGL2: return "borelgl2";
    }
    return "?";
}

inline std::string spec_label(const GroupSchemeSpec& s) {
    std::string base = family_name(s.family);
    if (s.family != Family::BorelGL2) base += std::to_string(s.nd);
    return base + "_p" + std::to_string(s.p) + "_r" + std::to_string(s.r);
}

inline void validate_spec(const GroupSchemeSpec& s) {
    if (!is_prime_u32(s.p)) throw FrdError("spec: p must be prime");
    if (s.r < 1) throw FrdError("spec: r must be >= 1");
    if (s.p == 2 && s.r == 1) throw FrdError("spec: p=2 requires r > 1");
    switch (s.family) {
        case Family::AdditiveGroup:
        case Family::Torus:
            if (s.nd < 1) throw FrdError("spec: rank must be >= 1");
            break;
        case Family::Unitriangular:
        case Family::GL:
            if (s.nd < 1 || s.nd > 4) throw FrdError("spec: matrix size out of range");
            break;
        case Family::BorelGL2:
            break;
    }
}

/// Truncated-monomial coordinate system: basis monomials x^gamma with
/// 0 <= gamma_c < q.  wrap[c]=1 means x_c^q = 1 (invertible coordinate),
/// wrap[c]=0 means x_c^q = 0.  Basis index is little-endian mixed radix.
struct MonCoords {
    uint32_t q = 1;
    std::vector<uint8_t> wrap;
    std::vector<std::string> names;
    std::vector<std::vector<int32_t>> weights;  // root-height weight per coordinate
    uint32_t wdim = 0;

    uint32_t ncoords() const { return static_cast<uint32_t>(wrap.size()); }

    uint32_t dim() const {
        uint64_t d = 1;
        for (size_t c = 0; c < wrap.size(); ++c) {
            d *= q;
            if (d > (1u << 31)) throw FrdError("MonCoords: dimension overflow");
        }
        return static_cast<uint32_t>(d);
    }

    std::vector<uint32_t> exps(uint32_t idx) const {
        std::vector<uint32_t> e(wrap.size());
        for (size_t c = 0; c < wrap.size(); ++c) {
            e[c] = idx % q;
            idx /= q;
        }
        return e;
    }

    uint32_t index(const std::vector<uint32_t>& e) const {
        uint32_t idx = 0;
        for (size_t c = e.size(); c-- > 0;) idx = idx * q + e[c];
        return idx;
    }

    /// Monomial product; nullopt when a nilpotent coordinate overflows.
    std::optional<uint32_t> mul_idx(uint32_t i, uint32_t j) const {
        uint32_t out = 0;
        uint64_t place = 1;
        for (size_t c = 0; c < wrap.size(); ++c) {
            uint32_t a = i % q, b = j % q;
            i /= q;
            j /= q;
            uint32_t s = a + b;
            if (s >= q) {
                if (!wrap[c]) return std::nullopt;
                s -= q;
            }
            out += static_cast<uint32_t>(s * place);
            place *= q;
        }
        return out;
    }

    std::string label(uint32_t idx) const {
        std::string s;
        for (size_t c = 0; c < wrap.size(); ++c) {
            uint32_t e = idx % q;
            idx /= q;
            if (!e) continue;
            if (!s.empty()) s += "*";
            s += names[c];
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s.empty() ? "1" : s;
    }

    std::vector<int32_t> degree(uint32_t idx) const {
        std::vector<int32_t> d(wdim, 0);
        for (size_t c = 0; c < wrap.size(); ++c) {
            uint32_t e = idx % q;
            idx /= q;
            if (!e) continue;
            for (uint32_t w = 0; w < wdim; ++w) d[w] += static_cast<int32_t>(e) * weights[c][w];
        }
        return d;
    }
};

struct MonomialMul final : MulSource {
    MonCoords cs;
    SpVec product(uint32_t i, uint32_t j) const override {
        auto k = cs.mul_idx(i, j);
        if (!k) return {};
        return {{*k, 1}};
    }
};

/// Arithmetic in O itself (monomial index space).
struct OCtx {
    const MonCoords* cs;
    Fp F{3};
    SpVec zero() const { return {}; }
    SpVec one() const { return {{0, 1}}; }
    SpVec add(const SpVec& a, const SpVec& b) const { return spv_add(a, b, F); }
    SpVec neg(const SpVec& a) const { return spv_scale(a, F.neg(1), F); }
    SpVec mul(const SpVec& a, const SpVec& b) const {
        SpVec out;
        for (auto& [i, ca] : a)
            for (auto& [j, cb] : b) {
                auto k = cs->mul_idx(i, j);
                if (k) out.emplace_back(*k, F.mul(ca, cb));
            }
        spv_normalize(out, F);
        return out;
    }
    SpVec pow(SpVec a, uint32_t e) const {
        SpVec r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }
};

/// Arithmetic in O⊗O (pair index a*dim + b).
struct PairCtx {
    const MonCoords* cs;
    Fp F{3};
    uint32_t dim = 0;
    SpVec zero() const { return {}; }
    SpVec one() const { return {{0, 1}}; }
    SpVec add(const SpVec& a, const SpVec& b) const { return spv_add(a, b, F); }
    SpVec neg(const SpVec& a) const { return spv_scale(a, F.neg(1), F); }
    SpVec mul(const SpVec& x, const SpVec& y) const {
        SpVec out;
        for (auto& [xi, cx] : x) {
            uint32_t a1 = xi / dim, b1 = xi % dim;
            for (auto& [yi, cy] : y) {
                auto a = cs->mul_idx(a1, yi / dim);
                if (!a) continue;
                auto b = cs->mul_idx(b1, yi % dim);
                if (!b) continue;
                out.emplace_back(*a * dim + *b, F.mul(cx, cy));
            }
        }
        spv_normalize(out, F);
        return out;
    }
    SpVec pow(SpVec a, uint32_t e) const {
        SpVec r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }
};

/// Multiplicative extension of generator images into O⊗O; serves both the
/// comultiplication and the adjoint coaction of monomial coordinate rings.
/// Generator powers are cached; rows are recomputed on demand.
struct MonomialPairHom final : ComultSource {
    MonCoords cs;
    Fp F{3};
    uint32_t dim = 0;
    std::vector<SpVec> gen_rows;  // image of x_c, pair indices
    mutable std::vector<std::vector<SpVec>> pow_cache;

    void init_cache() const {
        if (pow_cache.empty()) pow_cache.assign(cs.ncoords(), {});
    }

    const SpVec& gen_power(uint32_t c, uint32_t e) const {
        init_cache();
        auto& pc = pow_cache[c];
        if (pc.empty()) pc.push_back(SpVec{{0, 1}});  // unit of O⊗O
        PairCtx cx{&cs, F, dim};
        while (pc.size() <= e) pc.push_back(cx.mul(pc.back(), gen_rows[c]));
        return pc[e];
    }

    SpVec comult(uint32_t idx) const override {
        PairCtx cx{&cs, F, dim};
        SpVec acc{{0, 1}};
        for (uint32_t c = 0; c < cs.ncoords(); ++c) {
            uint32_t e = idx % cs.q;
            idx /= cs.q;
            if (e) acc = cx.mul(acc, gen_power(c, e));
        }
        return acc;
    }
};

/// Multiplicative extension of generator images inside O (antipodes of
/// commutative coordinate rings).
struct MonomialSelfHom final : LinMapSource {
    MonCoords cs;
    Fp F{3};
    std::vector<SpVec> gen_rows;
    mutable std::vector<std::vector<SpVec>> pow_cache;

    const SpVec& gen_power(uint32_t c, uint32_t e) const {
        if (pow_cache.empty()) pow_cache.assign(cs.ncoords(), {});
        auto& pc = pow_cache[c];
        if (pc.empty()) pc.push_back(SpVec{{0, 1}});
        OCtx cx{&cs, F};
        while (pc.size() <= e) pc.push_back(cx.mul(pc.back(), gen_rows[c]));
        return pc[e];
    }

    SpVec apply_basis(uint32_t idx) const override {
        OCtx cx{&cs, F};
        SpVec acc{{0, 1}};
        for (uint32_t c = 0; c < cs.ncoords(); ++c) {
            uint32_t e = idx % cs.q;
            idx /= cs.q;
            if (e) acc = cx.mul(acc, gen_power(c, e));
        }
        return acc;
    }
};

namespace detail {

/// Matrix-coordinate layout shared by GL, Unitriangular, and BorelGL2.
struct MatrixLayout {
    uint32_t n = 0;
    std::vector<std::pair<uint32_t, uint32_t>> pos;  // coordinate -> (i,j)
    std::vector<std::vector<int32_t>> at;            // (i,j) -> coordinate or -1

    int32_t coord(uint32_t i, uint32_t j) const { return at[i][j]; }
};

inline MatrixLayout matrix_layout(const GroupSchemeSpec& s) {
    MatrixLayout L;
    L.n = (s.family == Family::BorelGL2) ? 2 : s.nd;
    L.at.assign(L.n, std::vector<int32_t>(L.n, -1));
    for (uint32_t i = 0; i < L.n; ++i)
        for (uint32_t j = 0; j < L.n; ++j) {
            bool keep = false;
            if (s.family == Family::GL) keep = true;
            if (s.family == Family::Unitriangular) keep = i < j;
            if (s.family == Family::BorelGL2) keep = i <= j;
            if (keep) {
                L.at[i][j] = static_cast<int32_t>(L.pos.size());
                L.pos.emplace_back(i, j);
            }
        }
    return L;
}

using SymMatrix = std::vector<std::vector<SpVec>>;

/// Generic point of the family as a matrix over Ctx, entries embedded via
/// `embed(coordinate index)`.  Missing entries are the identity's.
template <class Ctx>
SymMatrix generic_matrix(const GroupSchemeSpec& s, const MatrixLayout& L, const Ctx& cx,
                         const std::function<SpVec(uint32_t)>& embed) {
    SymMatrix M(L.n, std::vector<SpVec>(L.n));
    for (uint32_t i = 0; i < L.n; ++i)
        for (uint32_t j = 0; j < L.n; ++j) {
            int32_t c = L.coord(i, j);
            if (c >= 0)
                M[i][j] = embed(static_cast<uint32_t>(c));
            else
                M[i][j] = (i == j) ? cx.one() : cx.zero();
        }
    return M;
}

template <class Ctx>
SymMatrix mat_mul(const Ctx& cx, const SymMatrix& A, const SymMatrix& B) {
    size_t n = A.size();
    SymMatrix C(n, std::vector<SpVec>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            SpVec acc;
            for (size_t k = 0; k < n; ++k) acc = cx.add(acc, cx.mul(A[i][k], B[k][j]));
            C[i][j] = acc;
        }
    return C;
}

template <class Ctx>
SpVec determinant(const Ctx& cx, const SymMatrix& M) {
    size_t n = M.size();
    std::vector<uint32_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = static_cast<uint32_t>(i);
    SpVec det;
    do {
        // sign of the permutation by inversion count
        uint32_t inv = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        SpVec term = cx.one();
        for (size_t i = 0; i < n; ++i) term = cx.mul(term, M[i][perm[i]]);
        det = cx.add(det, (inv % 2) ? cx.neg(term) : term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// Inverse of the generic matrix, per family.  For GL this is the adjugate
/// times det^{q-1} (det^q = 1 in the truncated ring); for unipotent families
/// the Neumann series of the strictly-triangular part.
template <class Ctx>
SymMatrix generic_inverse(const GroupSchemeSpec& s, const MatrixLayout& L, const Ctx& cx,
                          const SymMatrix& M, uint32_t q) {
    size_t n = L.n;
    if (s.family == Family::Unitriangular) {
        SymMatrix N(n, std::vector<SpVec>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) N[i][j] = (i == j) ? cx.zero() : M[i][j];
        SymMatrix inv(n, std::vector<SpVec>(n)), Npow = N;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) inv[i][j] = (i == j) ? cx.one() : cx.zero();
        for (size_t k = 1; k < n; ++k) {
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    inv[i][j] = cx.add(inv[i][j], (k % 2) ? cx.neg(Npow[i][j]) : Npow[i][j]);
            if (k + 1 < n) Npow = mat_mul(cx, Npow, N);
        }
        return inv;
    }
    if (s.family == Family::BorelGL2) {
        SpVec ai = cx.pow(M[0][0], q - 1), di = cx.pow(M[1][1], q - 1);
        SymMatrix inv(2, std::vector<SpVec>(2));
        inv[0][0] = ai;
        inv[1][1] = di;
        inv[1][0] = cx.zero();
        inv[0][1] = cx.neg(cx.mul(ai, cx.mul(M[0][1], di)));
        return inv;
    }
    // GL(n): adjugate * det^{q-1}
    SpVec dq = cx.pow(determinant(cx, M), q - 1);
    SymMatrix inv(n, std::vector<SpVec>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            // cofactor C_{ji}: delete row j, column i
            SymMatrix minor;
            for (size_t a = 0; a < n; ++a) {
                if (a == j) continue;
                std::vector<SpVec> row;
                for (size_t b = 0; b < n; ++b) {
                    if (b == i) continue;
                    row.push_back(M[a][b]);
                }
                minor.push_back(std::move(row));
            }
            SpVec c = minor.empty() ? cx.one() : determinant(cx, minor);
            if ((i + j) % 2) c = cx.neg(c);
            inv[i][j] = cx.mul(dq, c);
        }
    return inv;
}

}  // namespace detail

inline MonCoords coord_system(const GroupSchemeSpec& s) {
    validate_spec(s);
    MonCoords cs;
    cs.q = 1;
    for (uint32_t i = 0; i < s.r; ++i) cs.q *= s.p;
    auto simple_roots = [&](uint32_t i, uint32_t j, uint32_t m) {
        std::vector<int32_t> w(m, 0);
        for (uint32_t l = std::min(i, j); l < std::max(i, j); ++l) w[l] = (i < j) ? 1 : -1;
        return w;
    };
    switch (s.family) {
        case Family::AdditiveGroup:
            cs.wdim = s.nd;
            for (uint32_t i = 0; i < s.nd; ++i) {
                cs.wrap.push_back(0);
                cs.names.push_back("t" + std::to_string(i + 1));
                std::vector<int32_t> w(s.nd, 0);
                w[i] = 1;
                cs.weights.push_back(std::move(w));
            }
            break;
        case Family::Torus:
            cs.wdim = 0;
            for (uint32_t i = 0; i < s.nd; ++i) {
                cs.wrap.push_back(1);
                cs.names.push_back("x" + std::to_string(i + 1));
                cs.weights.push_back({});
            }
            break;
        case Family::Unitriangular:
        case Family::GL:
        case Family::BorelGL2: {
            auto L = detail::matrix_layout(s);
            cs.wdim = L.n - 1;
            for (auto& [i, j] : L.pos) {
                cs.wrap.push_back(i == j ? 1 : 0);
                cs.names.push_back("x" + std::to_string(i + 1) + std::to_string(j + 1));
                cs.weights.push_back(simple_roots(i, j, cs.wdim));
            }
            break;
        }
    }
    return cs;
}

/// The coordinate Hopf algebra O(G_r): truncated polynomial/group ring with
/// the family's group law.
inline HopfAlgebra coordinate_hopf(const GroupSchemeSpec& s) {
    MonCoords cs = coord_system(s);
    Fp F(s.p);
    uint32_t dim = cs.dim();
    HopfAlgebra H;
    H.A.F = F;
    H.A.dim = dim;
    H.A.unit = {{0, 1}};
    auto mul = std::make_shared<MonomialMul>();
    mul->cs = cs;
    H.A.mul = mul;

    // counit: evaluation at the identity element
    Vec aug(dim, 0);
    for (uint32_t i = 0; i < dim; ++i) {
        auto e = cs.exps(i);
        bool at_one = true;
        for (uint32_t c = 0; c < cs.ncoords(); ++c)
            if (!cs.wrap[c] && e[c]) at_one = false;
        aug[i] = at_one ? 1 : 0;
    }
    H.A.aug = std::move(aug);

    auto co = std::make_shared<MonomialPairHom>();
    co->cs = cs;
    co->F = F;
    co->dim = dim;
    co->gen_rows.resize(cs.ncoords());
    auto ant = std::make_shared<MonomialSelfHom>();
    ant->cs = cs;
    ant->F = F;
    ant->gen_rows.resize(cs.ncoords());

    if (s.family == Family::AdditiveGroup) {
        for (uint32_t c = 0; c < cs.ncoords(); ++c) {
            uint32_t g = 1;
            for (uint32_t t = 0; t < c; ++t) g *= cs.q;
            co->gen_rows[c] = {{g * dim + 0, 1}, {0 * dim + g, 1}};
            std::sort(co->gen_rows[c].begin(), co->gen_rows[c].end());
            ant->gen_rows[c] = {{g, F.neg(1)}};
        }
    } else if (s.family == Family::Torus) {
        for (uint32_t c = 0; c < cs.ncoords(); ++c) {
            uint32_t g = 1;
            for (uint32_t t = 0; t < c; ++t) g *= cs.q;
            co->gen_rows[c] = {{g * dim + g, 1}};
            std::vector<uint32_t> e(cs.ncoords(), 0);
            e[c] = cs.q - 1;
            ant->gen_rows[c] = {{cs.index(e), 1}};
        }
    } else {
        auto L = detail::matrix_layout(s);
        OCtx ocx{&cs, F};
        PairCtx pcx{&cs, F, dim};
        auto gen_idx = [&](uint32_t c) {
            std::vector<uint32_t> e(cs.ncoords(), 0);
            e[c] = 1;
            return cs.index(e);
        };
        auto embed1 = [&](uint32_t c) { return SpVec{{gen_idx(c) * dim + 0, 1}}; };
        auto embed2 = [&](uint32_t c) { return SpVec{{0 * dim + gen_idx(c), 1}}; };
        auto embedO = [&](uint32_t c) { return SpVec{{gen_idx(c), 1}}; };
        auto H1 = detail::generic_matrix(s, L, pcx, embed1);
        auto H2 = detail::generic_matrix(s, L, pcx, embed2);
        auto GL_prod = detail::mat_mul(pcx, H1, H2);
        for (uint32_t c = 0; c < cs.ncoords(); ++c) {
            auto [i, j] = L.pos[c];
            co->gen_rows[c] = GL_prod[i][j];
        }
        auto MO = detail::generic_matrix(s, L, ocx, embedO);
        auto MOinv = detail::generic_inverse(s, L, ocx, MO, cs.q);
        for (uint32_t c = 0; c < cs.ncoords(); ++c) {
            auto [i, j] = L.pos[c];
            ant->gen_rows[c] = MOinv[i][j];
        }
    }
    H.co = co;
    H.ant = ant;

    if (dim <= 65536) {
        H.A.labels.reserve(dim);
        for (uint32_t i = 0; i < dim; ++i) H.A.labels.push_back(cs.label(i));
    }
    FineGrading g;
    g.mods.assign(cs.wdim, 0);
    g.deg.reserve(dim);
    for (uint32_t i = 0; i < dim; ++i) g.deg.push_back(cs.degree(i));
    H.A.grading = std::move(g);

    H.comult_multiplicative = true;
    H.trunc_q = cs.q;
    for (uint32_t c = 0; c < cs.ncoords(); ++c) {
        std::vector<uint32_t> e(cs.ncoords(), 0);
        e[c] = 1;
        H.gens.push_back(cs.index(e));
    }
    return H;
}

/// Adjoint coaction of G on O(G_r): rho(f)(h,g) = f(g^{-1} h g), matching
/// xi.f = sum f_2 xi(S(f_1) f_3) for the dual action.  Trivial for abelian
/// families.
inline std::shared_ptr<const ComultSource> adjoint_coaction(const GroupSchemeSpec& s) {
    MonCoords cs = coord_system(s);
    Fp F(s.p);
    uint32_t dim = cs.dim();
    auto rho = std::make_shared<MonomialPairHom>();
    rho->cs = cs;
    rho->F = F;
    rho->dim = dim;
    rho->gen_rows.resize(cs.ncoords());
    auto gen_idx = [&](uint32_t c) {
        std::vector<uint32_t> e(cs.ncoords(), 0);
        e[c] = 1;
        return cs.index(e);
    };
    if (s.family == Family::AdditiveGroup || s.family == Family::Torus) {
        for (uint32_t c = 0; c < cs.ncoords(); ++c)
            rho->gen_rows[c] = {{gen_idx(c) * dim + 0, 1}};
        return rho;
    }
    auto L = detail::matrix_layout(s);
    PairCtx pcx{&cs, F, dim};
    auto embed1 = [&](uint32_t c) { return SpVec{{gen_idx(c) * dim + 0, 1}}; };
    auto embed2 = [&](uint32_t c) { return SpVec{{0 * dim + gen_idx(c), 1}}; };
    auto H1 = detail::generic_matrix(s, L, pcx, embed1);
    auto G2 = detail::generic_matrix(s, L, pcx, embed2);
    auto G2inv = detail::generic_inverse(s, L, pcx, G2, cs.q);
    auto conj = detail::mat_mul(pcx, detail::mat_mul(pcx, G2inv, H1), G2);
    for (uint32_t c = 0; c < cs.ncoords(); ++c) {
        auto [i, j] = L.pos[c];
        rho->gen_rows[c] = conj[i][j];
    }
    return rho;
}

/// Lift of a basis of m/m^2: x_c - 1 for invertible coordinates, x_c for
/// nilpotent ones.  Size = dim G.
inline std::vector<SpVec> cotangent_basis(const GroupSchemeSpec& s) {
    MonCoords cs = coord_system(s);
    Fp F(s.p);
    std::vector<SpVec> out;
    for (uint32_t c = 0; c < cs.ncoords(); ++c) {
        std::vector<uint32_t> e(cs.ncoords(), 0);
        e[c] = 1;
        uint32_t g = cs.index(e);
        if (cs.wrap[c])
            out.push_back(SpVec{{0, F.neg(1)}, {g, 1}});
        else
            out.push_back(SpVec{{g, 1}});
    }
    return out;
}

/// The group algebra kG_r as the materialized dual: multiplication is the
/// transposed comultiplication (budgeted), comultiplication enumerates
/// monomial factorizations in closed form, antipode is the transpose.
struct MonomialDualComult final : ComultSource {
    MonCoords cs;
    uint32_t dim = 0;

    SpVec comult(uint32_t idx) const override {
        auto gamma = cs.exps(idx);
        uint32_t nc = cs.ncoords();
        // odometer over per-coordinate factorizations
        std::vector<uint32_t> choice(nc, 0), limit(nc);
        for (uint32_t c = 0; c < nc; ++c) limit[c] = cs.wrap[c] ? cs.q : gamma[c] + 1;
        SpVec out;
        std::vector<uint32_t> alpha(nc), beta(nc);
        while (true) {
            for (uint32_t c = 0; c < nc; ++c) {
                if (cs.wrap[c]) {
                    alpha[c] = choice[c];
                    beta[c] = (gamma[c] + cs.q - choice[c]) % cs.q;
                } else {
                    alpha[c] = choice[c];
                    beta[c] = gamma[c] - choice[c];
                }
            }
            out.emplace_back(cs.index(alpha) * dim + cs.index(beta), 1);
            uint32_t c = 0;
            while (c < nc && ++choice[c] == limit[c]) choice[c++] = 0;
            if (c == nc) break;
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline HopfAlgebra group_algebra(const GroupSchemeSpec& s, size_t max_entries = 50000000) {
    HopfAlgebra O = coordinate_hopf(s);
    MonCoords cs = coord_system(s);
    const Fp F = O.A.F;
    const uint32_t d = O.A.dim;
    HopfAlgebra K;
    K.A.F = F;
    K.A.dim = d;
    K.A.unit = to_sparse(*O.A.aug);

    auto mul = std::make_shared<TableMul>(d);
    size_t total = 0;
    for (uint32_t i = 0; i < d; ++i)
        for (auto& [ab, c] : O.co->comult(i)) {
            mul->at(ab / d, ab % d).emplace_back(i, c);
            if (++total > max_entries) throw FrdError("group_algebra: dual mult budget exceeded");
        }
    K.A.mul = mul;

    Vec aug(d, 0);
    aug[0] = 1;  // evaluation at 1_O = the zero-exponent monomial
    K.A.aug = std::move(aug);

    auto co = std::make_shared<MonomialDualComult>();
    co->cs = cs;
    co->dim = d;
    K.co = co;

    auto ant = std::make_shared<TableLinMap>();
    ant->rows.resize(d);
    for (uint32_t i = 0; i < d; ++i)
        for (auto& [j, c] : O.ant->apply_basis(i)) ant->rows[j].emplace_back(i, c);
    K.ant = ant;

    if (!O.A.labels.empty()) {
        K.A.labels.reserve(d);
        for (uint32_t i = 0; i < d; ++i) K.A.labels.push_back(O.A.labels[i] + "*");
    }
    K.A.grading = O.A.grading;
    return K;
}

/// Materialized adjoint action matrices of kG_r on O(G_r): action[j] is the
/// matrix of the dual basis element xi_j.  Budgeted by total coaction size.
inline Representation adjoint_module(const GroupSchemeSpec& s, size_t max_entries = 50000000) {
    auto rho = adjoint_coaction(s);
    MonCoords cs = coord_system(s);
    uint32_t d = cs.dim();
    Representation R;
    R.dim_M = d;
    R.action.resize(d);
    for (uint32_t j = 0; j < d; ++j) {
        R.action[j].rows = d;
        R.action[j].cols = d;
    }
    size_t total = 0;
    for (uint32_t i = 0; i < d; ++i) {
        for (auto& [ab, c] : rho->comult(i)) {
            uint32_t a = ab / d, b = ab % d;
            R.action[b].entries.emplace_back(a, i, c);  // xi_b . f_i = c f_a + ...
            if (++total > max_entries) throw FrdError("adjoint_module: budget exceeded");
        }
    }
    Fp F(s.p);
    for (uint32_t j = 0; j < d; ++j) R.action[j].canonicalize(F);
    return R;
}

/// The p^r-th power subalgebra of O(G_{r+1}) with its monomial splitting.
/// Subalgebra basis: monomials with all exponents divisible by q = p^r;
/// complement coordinates: exponents < q.
struct FrobeniusSubalgebra {
    GroupSchemeSpec spec;     // the deformed height-r scheme
    HopfAlgebra ambient;      // O(G_{r+1})
    MonCoords ambient_cs;
    MonCoords low_cs;         // coordinate system of O(G_r), the fiber
    uint32_t qr = 0;          // p^r
    std::vector<SpVec> gens;  // f^{q} for f in the cotangent basis, inside the ambient
    std::vector<uint32_t> sub_basis;  // ambient indices of the subalgebra basis

    /// ambient monomial -> (fiber monomial of O(G_r), subalgebra basis slot)
    std::pair<uint32_t, uint32_t> split(uint32_t ambient_idx) const {
        auto e = ambient_cs.exps(ambient_idx);
        std::vector<uint32_t> lo(e.size()), hi(e.size());
        for (size_t c = 0; c < e.size(); ++c) {
            lo[c] = e[c] % qr;
            hi[c] = e[c] / qr;
        }
        uint32_t low_idx = low_cs.index(lo);
        uint32_t hi_idx = 0;
        for (size_t c = hi.size(); c-- > 0;) hi_idx = hi_idx * spec.p + hi[c];
        return {low_idx, hi_idx};
    }

    uint32_t fuse(uint32_t low_idx, uint32_t hi_idx) const {
        auto lo = low_cs.exps(low_idx);
        std::vector<uint32_t> e(lo.size());
        for (size_t c = 0; c < e.size(); ++c) {
            e[c] = lo[c] + qr * (hi_idx % spec.p);
            hi_idx /= spec.p;
        }
        return ambient_cs.index(e);
    }
};

inline FrobeniusSubalgebra frobenius_sub(const GroupSchemeSpec& s) {
    FrobeniusSubalgebra FS;
    FS.spec = s;
    GroupSchemeSpec up = s;
    up.r = s.r + 1;
    FS.ambient = coordinate_hopf(up);
    FS.ambient_cs = coord_system(up);
    FS.low_cs = coord_system(s);
    FS.qr = 1;
    for (uint32_t i = 0; i < s.r; ++i) FS.qr *= s.p;
    Fp F(s.p);
    MonCoords& acs = FS.ambient_cs;
    for (uint32_t c = 0; c < acs.ncoords(); ++c) {
        std::vector<uint32_t> e(acs.ncoords(), 0);
        e[c] = FS.qr;
        uint32_t gq = acs.index(e);
        if (acs.wrap[c])
            FS.gens.push_back(SpVec{{0, F.neg(1)}, {gq, 1}});  // (x-1)^q = x^q - 1
        else
            FS.gens.push_back(SpVec{{gq, 1}});
    }
    for (uint32_t i = 0; i < FS.ambient.A.dim; ++i) {
        auto e = acs.exps(i);
        bool all_div = true;
        for (uint32_t c = 0; c < acs.ncoords(); ++c)
            if (e[c] % FS.qr) all_div = false;
        if (all_div) FS.sub_basis.push_back(i);
    }
    return FS;
}

}  // namespace frd
