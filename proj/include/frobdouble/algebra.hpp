#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace frd {

/// Supplies basis products e_i * e_j.  Implementations may compute lazily;
/// results must be deterministic and reduced mod p.
struct MulSource {
    virtual ~MulSource() = default;
    virtual SpVec product(uint32_t i, uint32_t j) const = 0;
};

/// Fully materialized multiplication table.
struct TableMul final : MulSource {
    uint32_t dim = 0;
    std::vector<SpVec> table;  // index i*dim + j

    TableMul() = default;
    explicit TableMul(uint32_t d) : dim(d), table(static_cast<size_t>(d) * d) {}

    SpVec product(uint32_t i, uint32_t j) const override {
        return table[static_cast<size_t>(i) * dim + j];
    }
    SpVec& at(uint32_t i, uint32_t j) { return table[static_cast<size_t>(i) * dim + j]; }
    const SpVec& cat(uint32_t i, uint32_t j) const { return table[static_cast<size_t>(i) * dim + j]; }

    size_t total_entries() const {
        size_t n = 0;
        for (auto& v : table) n += v.size();
        return n;
    }
};

/// Multigrading by Z^m; mods[c] = 0 means a free coordinate, otherwise the
/// degree in coordinate c lives in Z/mods[c].  Compatible gradings satisfy
/// deg(e_k) = deg(e_i) + deg(e_j) whenever c^k_{ij} != 0.
struct FineGrading {
    std::vector<uint32_t> mods;
    std::vector<std::vector<int32_t>> deg;  // one degree vector per basis element
};

/// Finite-dimensional associative algebra on an explicit basis.
struct FiniteDimAlgebra {
    Fp F{3};
    uint32_t dim = 0;
    SpVec unit;
    std::shared_ptr<const MulSource> mul;
    std::vector<std::string> labels;
    std::optional<Vec> aug;             // augmentation (algebra map to k) when present
    std::optional<FineGrading> grading;

    SpVec multiply(const SpVec& a, const SpVec& b) const {
        SpVec acc;
        for (auto& [i, ca] : a)
            for (auto& [j, cb] : b) {
                uint32_t c = F.mul(ca, cb);
                if (!c) continue;
                for (auto& [k, m] : mul->product(i, j)) acc.emplace_back(k, F.mul(c, m));
            }
        spv_normalize(acc, F);
        return acc;
    }

    SpVec power(const SpVec& a, uint32_t e) const {
        SpVec r = unit, b = a;
        while (e) {
            if (e & 1) r = multiply(r, b);
            e >>= 1;
            if (e) b = multiply(b, b);
        }
        return r;
    }

    uint32_t augment(const SpVec& a) const {
        if (!aug) throw FrdError("augment: algebra has no augmentation");
        uint32_t s = 0;
        for (auto& [i, c] : a) s = F.add(s, F.mul(c, (*aug)[i]));
        return s;
    }

    /// Left multiplication by a as a dim x dim sparse matrix (column j = a*e_j).
    SparseMatrix left_mult_matrix(const SpVec& a) const {
        SparseMatrix L;
        L.rows = dim;
        L.cols = dim;
        for (uint32_t j = 0; j < dim; ++j)
            for (auto& [i, ca] : a)
                for (auto& [k, m] : mul->product(i, j)) L.entries.emplace_back(k, j, F.mul(ca, m));
        L.canonicalize(F);
        return L;
    }

    SparseMatrix right_mult_matrix(const SpVec& a) const {
        SparseMatrix R;
        R.rows = dim;
        R.cols = dim;
        for (uint32_t j = 0; j < dim; ++j)
            for (auto& [i, ca] : a)
                for (auto& [k, m] : mul->product(j, i)) R.entries.emplace_back(k, j, F.mul(ca, m));
        R.canonicalize(F);
        return R;
    }

    std::string label(uint32_t i) const {
        return i < labels.size() ? labels[i] : "e" + std::to_string(i);
    }
};

/// Materialize a lazy multiplication source into a table, guarding against
/// blow-up by a total-entry budget.
inline std::shared_ptr<TableMul> materialize_mul(const FiniteDimAlgebra& A, size_t max_entries) {
    auto T = std::make_shared<TableMul>(A.dim);
    size_t total = 0;
    for (uint32_t i = 0; i < A.dim; ++i)
        for (uint32_t j = 0; j < A.dim; ++j) {
            SpVec v = A.mul->product(i, j);
            total += v.size();
            if (total > max_entries) throw FrdError("materialize_mul: entry budget exceeded");
            T->at(i, j) = std::move(v);
        }
    return T;
}

/// Module given by one action matrix per algebra basis element.
struct Representation {
    uint32_t dim_M = 0;
    std::vector<SparseMatrix> action;  // action[i] = matrix of e_i, dim_M x dim_M

    Vec apply_basis(uint32_t i, const Vec& v, const Fp& F) const {
        Vec out(dim_M, 0);
        for (auto& [r, c, m] : action[i].entries)
            if (v[c]) out[r] = F.add(out[r], F.mul(m, v[c]));
        return out;
    }

    Vec apply(const SpVec& a, const Vec& v, const Fp& F) const {
        Vec out(dim_M, 0);
        for (auto& [i, ca] : a)
            for (auto& [r, c, m] : action[i].entries)
                if (v[c]) out[r] = F.add(out[r], F.mul(F.mul(ca, m), v[c]));
        return out;
    }
};

/// Trivial module through the augmentation.
inline Representation trivial_module(const FiniteDimAlgebra& A) {
    if (!A.aug) throw FrdError("trivial_module: no augmentation");
    Representation R;
    R.dim_M = 1;
    R.action.resize(A.dim);
    for (uint32_t i = 0; i < A.dim; ++i) {
        R.action[i].rows = 1;
        R.action[i].cols = 1;
        if ((*A.aug)[i]) R.action[i].entries.emplace_back(0, 0, (*A.aug)[i]);
    }
    return R;
}

/// One-dimensional module through an arbitrary character (algebra map to k).
inline Representation character_module(const FiniteDimAlgebra& A, const Vec& chi) {
    Representation R;
    R.dim_M = 1;
    R.action.resize(A.dim);
    for (uint32_t i = 0; i < A.dim; ++i) {
        R.action[i].rows = 1;
        R.action[i].cols = 1;
        if (chi[i] % A.F.p()) R.action[i].entries.emplace_back(0, 0, chi[i] % A.F.p());
    }
    return R;
}

/// Regular representation (left multiplication).  Only for small dims.
inline Representation regular_module(const FiniteDimAlgebra& A) {
    Representation R;
    R.dim_M = A.dim;
    R.action.resize(A.dim);
    for (uint32_t i = 0; i < A.dim; ++i) R.action[i] = A.left_mult_matrix(SpVec{{i, 1}});
    return R;
}

struct CheckReport {
    bool pass = true;
    std::string first_failure;
    uint64_t checked = 0;

    void fail(const std::string& what) {
        if (pass) first_failure = what;
        pass = false;
    }
};

/// Module axioms on all basis pairs: rho(1) = id, rho(e_i e_j) = rho(e_i)rho(e_j).
inline CheckReport representation_check(const FiniteDimAlgebra& A, const Representation& rho) {
    const Fp& F = A.F;
    CheckReport rep;
    auto col = [&](const SparseMatrix& m, uint32_t j) {
        Vec v(rho.dim_M, 0);
        for (auto& [r, c, val] : m.entries)
            if (c == j) v[r] = val;
        return v;
    };
    // rho(unit) = identity, checked columnwise
    for (uint32_t j = 0; j < rho.dim_M; ++j) {
        Vec ej(rho.dim_M, 0);
        ej[j] = 1;
        Vec img = rho.apply(A.unit, ej, F);
        ++rep.checked;
        if (img != ej) {
            rep.fail("rho(unit) != id at column " + std::to_string(j));
            return rep;
        }
    }
    for (uint32_t i = 0; i < A.dim; ++i)
        for (uint32_t j = 0; j < A.dim; ++j) {
            SpVec prod = A.mul->product(i, j);
            for (uint32_t col_idx = 0; col_idx < rho.dim_M; ++col_idx) {
                Vec ec = col(rho.action[j], col_idx);
                Vec lhs = rho.apply_basis(i, ec, F);
                Vec rhs(rho.dim_M, 0);
                for (auto& [k, c] : prod) {
                    Vec t = col(rho.action[k], col_idx);
                    for (uint32_t r = 0; r < rho.dim_M; ++r)
                        rhs[r] = F.add(rhs[r], F.mul(c, t[r]));
                }
                ++rep.checked;
                if (lhs != rhs) {
                    rep.fail("rho(e_" + std::to_string(i) + " e_" + std::to_string(j) +
                             ") mismatch at column " + std::to_string(col_idx));
                    return rep;
                }
            }
        }
    return rep;
}

/// Lazy multiplication of a tensor product algebra; index = i*dimB + j.
struct TensorMul final : MulSource {
    std::shared_ptr<const MulSource> a, b;
    uint32_t dimB = 0;
    Fp F{3};

    SpVec product(uint32_t x, uint32_t y) const override {
        uint32_t i1 = x / dimB, j1 = x % dimB;
        uint32_t i2 = y / dimB, j2 = y % dimB;
        SpVec pa = a->product(i1, i2);
        SpVec pb = b->product(j1, j2);
        SpVec out;
        out.reserve(pa.size() * pb.size());
        for (auto& [k1, c1] : pa)
            for (auto& [k2, c2] : pb) out.emplace_back(k1 * dimB + k2, F.mul(c1, c2));
        spv_normalize(out, F);
        return out;
    }
};

inline SpVec tensor_spvec(const SpVec& a, const SpVec& b, uint32_t dimB, const Fp& F) {
    SpVec out;
    out.reserve(a.size() * b.size());
    for (auto& [i, ca] : a)
        for (auto& [j, cb] : b) out.emplace_back(i * dimB + j, F.mul(ca, cb));
    spv_normalize(out, F);
    return out;
}

/// Componentwise product algebra on basis pairs.  Labels are kept only when
/// the result stays small.
inline FiniteDimAlgebra tensor_algebra(const FiniteDimAlgebra& A, const FiniteDimAlgebra& B) {
    if (A.F.p() != B.F.p()) throw FrdError("tensor_algebra: prime mismatch");
    FiniteDimAlgebra T;
    T.F = A.F;
    T.dim = A.dim * B.dim;
    auto src = std::make_shared<TensorMul>();
    src->a = A.mul;
    src->b = B.mul;
    src->dimB = B.dim;
    src->F = A.F;
    T.mul = src;
    T.unit = tensor_spvec(A.unit, B.unit, B.dim, A.F);
    if (A.aug && B.aug) {
        Vec e(T.dim, 0);
        for (uint32_t i = 0; i < A.dim; ++i)
            for (uint32_t j = 0; j < B.dim; ++j) e[i * B.dim + j] = A.F.mul((*A.aug)[i], (*B.aug)[j]);
        T.aug = std::move(e);
    }
    if (T.dim <= 65536 && !A.labels.empty() && !B.labels.empty()) {
        T.labels.reserve(T.dim);
        for (uint32_t i = 0; i < A.dim; ++i)
            for (uint32_t j = 0; j < B.dim; ++j) T.labels.push_back(A.label(i) + "(x)" + B.label(j));
    }
    if (A.grading && B.grading) {
        FineGrading g;
        g.mods = A.grading->mods;
        g.mods.insert(g.mods.end(), B.grading->mods.begin(), B.grading->mods.end());
        g.deg.reserve(T.dim);
        for (uint32_t i = 0; i < A.dim; ++i)
            for (uint32_t j = 0; j < B.dim; ++j) {
                std::vector<int32_t> d = A.grading->deg[i];
                d.insert(d.end(), B.grading->deg[j].begin(), B.grading->deg[j].end());
                g.deg.push_back(std::move(d));
            }
        T.grading = std::move(g);
    }
    return T;
}

}  // namespace frd
