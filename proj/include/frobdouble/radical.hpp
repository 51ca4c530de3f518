#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace frd {

/// Characteristic polynomial det(lambda I - M) over F_p, coefficients in
/// ascending degree, monic.  Hessenberg reduction + column recurrence, O(n^3).
inline std::vector<uint32_t> charpoly(DenseMat M, const Fp& F) {
    if (M.rows != M.cols) throw FrdError("charpoly: square matrix required");
    const uint32_t n = M.rows;
    for (uint32_t r = 0; r < n; ++r)
        for (uint32_t c = 0; c < n; ++c) M.set(r, c, M.at(r, c) % F.p());
    // similarity reduction to upper Hessenberg
    for (uint32_t k = 0; k + 2 < n; ++k) {
        uint32_t piv = n;
        for (uint32_t i = k + 1; i < n; ++i)
            if (M.at(i, k)) {
                piv = i;
                break;
            }
        if (piv == n) continue;
        if (piv != k + 1) {
            for (uint32_t j = 0; j < n; ++j) std::swap(M.row(piv)[j], M.row(k + 1)[j]);
            for (uint32_t j = 0; j < n; ++j) {
                uint8_t t = M.at(j, piv);
                M.set(j, piv, M.at(j, k + 1));
                M.set(j, k + 1, t);
            }
        }
        uint32_t inv = F.inv(M.at(k + 1, k));
        for (uint32_t i = k + 2; i < n; ++i) {
            uint32_t f = F.mul(M.at(i, k), inv);
            if (!f) continue;
            for (uint32_t j = 0; j < n; ++j) M.set(i, j, F.sub(M.at(i, j), F.mul(f, M.at(k + 1, j))));
            for (uint32_t j = 0; j < n; ++j) M.set(j, k + 1, F.add(M.at(j, k + 1), F.mul(f, M.at(j, i))));
        }
    }
    // p_k = charpoly of the leading k x k block
    std::vector<std::vector<uint32_t>> P(n + 1);
    P[0] = {1};
    for (uint32_t k = 1; k <= n; ++k) {
        std::vector<uint32_t>& prev = P[k - 1];
        std::vector<uint32_t> cur(k + 1, 0);
        uint32_t d = M.at(k - 1, k - 1);
        for (uint32_t t = 0; t < prev.size(); ++t) {
            cur[t + 1] = F.add(cur[t + 1], prev[t]);
            if (d) cur[t] = F.sub(cur[t], F.mul(d, prev[t]));
        }
        uint32_t prod = 1;
        for (uint32_t m = 2; m <= k; ++m) {
            prod = F.mul(prod, M.at(k - m + 1, k - m));
            if (!prod) break;
            uint32_t c = F.mul(M.at(k - m, k - 1), prod);
            if (!c) continue;
            const std::vector<uint32_t>& pm = P[k - m];
            for (uint32_t t = 0; t < pm.size(); ++t)
                if (pm[t]) cur[t] = F.sub(cur[t], F.mul(c, pm[t]));
        }
        P[k] = std::move(cur);
    }
    return P[n];
}

struct RadicalOptions {
    bool assume_commutative = false;
    bool allow_uncertified = false;  // permit sampled nilpotency on big candidates
    uint32_t charpoly_dim_cap = 64;
    uint64_t op_budget = 400000000;
    uint64_t seed = 0xRADC0DEull;
};

struct RadicalData {
    std::shared_ptr<Fp> F;
    RowSpace space;
    uint32_t nil_index = 1;  // smallest k with rad^k = 0; 0 when not certified
    std::string method;
    bool certified = true;

    RadicalData(uint32_t n, const Fp& f) : F(std::make_shared<Fp>(f)), space(n, *F) {}
    uint32_t dim() const { return space.dim(); }
};

namespace detail {

inline uint64_t spv_cost(const SpVec& v) { return 4 + v.size(); }

}  // namespace detail

/// Augmentation ideal as a row space (kernel of the augmentation form).
inline RowSpace augmentation_ideal(const FiniteDimAlgebra& A, const Fp& F) {
    if (!A.aug) throw FrdError("augmentation_ideal: no augmentation");
    RowSpace V(A.dim, F);
    uint32_t u = A.dim;
    for (uint32_t i = 0; i < A.dim; ++i)
        if ((*A.aug)[i]) {
            u = i;
            break;
        }
    if (u == A.dim) throw FrdError("augmentation_ideal: augmentation is zero");
    uint32_t iu = F.inv((*A.aug)[u]);
    for (uint32_t i = 0; i < A.dim; ++i) {
        if (i == u) continue;
        Vec v(A.dim, 0);
        v[i] = 1;
        uint32_t c = (*A.aug)[i];
        if (c) v[u] = F.neg(F.mul(c, iu));
        V.insert(std::move(v));
    }
    return V;
}

/// Span of the two-sided ideal generated by `gens`: span{e_i s e_j}.  One
/// pass suffices since a(sb)c and (as)(bc) run over the same products.
inline RowSpace two_sided_ideal_span(const FiniteDimAlgebra& A, const std::vector<SpVec>& gens,
                                     const Fp& F, uint64_t op_budget = 400000000) {
    RowSpace V(A.dim, F);
    uint64_t ops = 0;
    for (auto& s : gens) {
        std::vector<SpVec> right(A.dim);
        for (uint32_t j = 0; j < A.dim; ++j) right[j] = A.multiply(s, SpVec{{j, 1}});
        for (uint32_t i = 0; i < A.dim; ++i) {
            for (uint32_t j = 0; j < A.dim; ++j) {
                if (right[j].empty()) continue;
                SpVec v = A.multiply(SpVec{{i, 1}}, right[j]);
                ops += detail::spv_cost(v) + static_cast<uint64_t>(V.dim()) * 4;
                if (ops > op_budget) throw FrdError("two_sided_ideal_span: op budget exceeded");
                if (!v.empty()) V.insert(to_dense(v, A.dim));
                if (V.dim() == A.dim) return V;
            }
        }
    }
    return V;
}

/// Smallest k with V^k = 0 (V^{k+1} = span{a b : a in V^k, b in V}), or
/// nullopt if the chain stabilizes at a nonzero space or busts the budget.
inline std::optional<uint32_t> ideal_nilpotency_index(const FiniteDimAlgebra& A, const RowSpace& V,
                                                      uint64_t op_budget = 400000000) {
    const Fp& F = A.F;
    std::vector<SpVec> vb;
    vb.reserve(V.dim());
    for (auto& r : V.basis()) vb.push_back(to_sparse(r));
    std::vector<SpVec> cur = vb;
    uint64_t ops = 0;
    uint32_t k = 1;
    while (!cur.empty()) {
        RowSpace next(A.dim, F);
        for (auto& a : cur) {
            for (auto& b : vb) {
                SpVec ab = A.multiply(a, b);
                ops += detail::spv_cost(ab) * (1 + a.size()) + static_cast<uint64_t>(next.dim()) * 4;
                if (ops > op_budget) return std::nullopt;
                if (!ab.empty()) next.insert(to_dense(ab, A.dim));
            }
        }
        if (next.dim() >= cur.size() && next.dim() > 0) return std::nullopt;  // stabilized
        ++k;
        if (next.dim() == 0) return k;
        cur.clear();
        for (auto& r : next.basis()) cur.push_back(to_sparse(r));
    }
    return k;
}

/// Local case: if the augmentation ideal is nilpotent it equals the radical.
inline std::optional<RadicalData> radical_local(const FiniteDimAlgebra& A,
                                                const RadicalOptions& opts = {}) {
    if (!A.aug) return std::nullopt;
    RadicalData rd(A.dim, A.F);
    rd.space = augmentation_ideal(A, *rd.F);
    auto nil = ideal_nilpotency_index(A, rd.space, opts.op_budget);
    if (!nil) return std::nullopt;
    rd.nil_index = *nil;
    rd.method = "local";
    return rd;
}

/// Commutative case over F_p: the radical is the set of nilpotents, the
/// kernel of an iterated Frobenius map x -> x^p, which is F_p-linear.
inline RadicalData radical_frobenius(const FiniteDimAlgebra& A, const RadicalOptions& opts = {}) {
    const Fp& F = A.F;
    const uint32_t n = A.dim;
    const uint32_t p = F.p();
    DenseMat Phi(n, n);
    for (uint32_t i = 0; i < n; ++i)
        for (auto& [k, c] : A.power(SpVec{{i, 1}}, p)) Phi.set(k, i, c);
    DenseMat M = Phi;
    uint64_t reach = p;
    while (reach < n) {
        M = matmul(Phi, M, F);
        reach *= p;
    }
    SparseMatrix S = to_sparse(M, F);
    auto rr = rref_kernel(S, F);
    RadicalData rd(n, F);
    for (auto& v : rr.kernel) rd.space.insert(v);
    auto nil = ideal_nilpotency_index(A, rd.space, opts.op_budget);
    rd.nil_index = nil ? *nil : 0;
    rd.method = "frobenius";
    return rd;
}

/// General char-p algorithm: chain V_0 = A,
/// V_{s+1} = {x in V_s : c_{p^s}(L_{x e_j}) = 0 for all j}, s while p^s <= n.
/// The final space is the radical; the chain maps are F_p-linear on each V_s.
inline RadicalData radical_charpoly_chain(const FiniteDimAlgebra& A,
                                          const RadicalOptions& opts = {}) {
    const Fp& F = A.F;
    const uint32_t n = A.dim;
    if (n > opts.charpoly_dim_cap)
        throw FrdError("radical_charpoly_chain: dimension above cap; supply a candidate");
    std::vector<Vec> Vb(n);
    for (uint32_t i = 0; i < n; ++i) {
        Vb[i].assign(n, 0);
        Vb[i][i] = 1;
    }
    for (uint64_t ps = 1; ps <= n && !Vb.empty(); ps *= F.p()) {
        SparseMatrix S;
        S.rows = n;
        S.cols = static_cast<uint32_t>(Vb.size());
        for (uint32_t i = 0; i < Vb.size(); ++i) {
            SpVec xi = to_sparse(Vb[i]);
            for (uint32_t j = 0; j < n; ++j) {
                SpVec xy = A.multiply(xi, SpVec{{j, 1}});
                if (xy.empty()) continue;
                auto cp = charpoly(to_dense(A.left_mult_matrix(xy)), F);
                uint32_t c = cp[n - ps];
                if (c) S.entries.emplace_back(j, i, c);
            }
        }
        auto rr = rref_kernel(S, F);
        std::vector<Vec> next;
        next.reserve(rr.kernel.size());
        for (auto& a : rr.kernel) {
            Vec v(n, 0);
            for (uint32_t i = 0; i < a.size(); ++i)
                if (a[i])
                    for (uint32_t j = 0; j < n; ++j)
                        if (Vb[i][j]) v[j] = F.add(v[j], F.mul(a[i], Vb[i][j]));
            next.push_back(std::move(v));
        }
        Vb = std::move(next);
    }
    RadicalData rd(n, F);
    for (auto& v : Vb) rd.space.insert(v);
    auto nil = ideal_nilpotency_index(A, rd.space, opts.op_budget);
    if (!nil) throw FrdError("radical_charpoly_chain: computed space is not nilpotent");
    rd.nil_index = *nil;
    rd.method = "charpoly";
    return rd;
}

/// Quotient A/V on the canonical complement basis (non-pivot coordinates).
struct QuotientAlgebra {
    FiniteDimAlgebra Q;
    std::vector<uint32_t> reps;  // quotient basis index -> parent basis index
    std::shared_ptr<Fp> F;
    std::shared_ptr<RowSpace> ideal;
    uint32_t parent_dim = 0;

    SpVec project(const SpVec& a) const {
        Vec q = ideal->quotient_coordinates(to_dense(a, parent_dim));
        return to_sparse(q);
    }
    SpVec lift(const SpVec& q) const {
        SpVec v;
        for (auto& [i, c] : q) v.emplace_back(reps[i], c);
        std::sort(v.begin(), v.end());
        return v;
    }
};

inline QuotientAlgebra quotient_by_ideal(const FiniteDimAlgebra& A, const RowSpace& V) {
    QuotientAlgebra QA;
    QA.F = std::make_shared<Fp>(A.F);
    QA.ideal = std::make_shared<RowSpace>(V);
    QA.parent_dim = A.dim;
    std::vector<uint8_t> is_piv(A.dim, 0);
    for (uint32_t c : V.pivots()) is_piv[c] = 1;
    for (uint32_t i = 0; i < A.dim; ++i)
        if (!is_piv[i]) QA.reps.push_back(i);
    const uint32_t m = static_cast<uint32_t>(QA.reps.size());
    QA.Q.F = A.F;
    QA.Q.dim = m;
    auto mul = std::make_shared<TableMul>(m);
    for (uint32_t a = 0; a < m; ++a)
        for (uint32_t b = 0; b < m; ++b) {
            SpVec prod = A.multiply(SpVec{{QA.reps[a], 1}}, SpVec{{QA.reps[b], 1}});
            mul->at(a, b) = QA.project(prod);
        }
    QA.Q.mul = mul;
    QA.Q.unit = QA.project(A.unit);
    if (A.aug) {
        bool ok = true;
        for (auto& row : V.basis()) {
            uint64_t s = 0;
            for (uint32_t i = 0; i < A.dim; ++i)
                if (row[i]) s += static_cast<uint64_t>(row[i]) * (*A.aug)[i];
            if (s % A.F.p()) ok = false;
        }
        if (ok) {
            Vec aug(m);
            for (uint32_t i = 0; i < m; ++i) aug[i] = (*A.aug)[QA.reps[i]];
            QA.Q.aug = std::move(aug);
        }
    }
    if (!A.labels.empty())
        for (uint32_t i = 0; i < m; ++i) QA.Q.labels.push_back(A.labels[QA.reps[i]]);
    return QA;
}

/// Radical from a structural generating set: span the ideal, certify the
/// semisimple quotient, certify nilpotency (exactly within budget, otherwise
/// by seeded element sampling when allow_uncertified is set).
inline RadicalData radical_from_candidate(const FiniteDimAlgebra& A, const std::vector<SpVec>& gens,
                                          const RadicalOptions& opts = {}) {
    const Fp& F = A.F;
    RadicalData rd(A.dim, F);
    rd.space = two_sided_ideal_span(A, gens, *rd.F, opts.op_budget);
    QuotientAlgebra QA = quotient_by_ideal(A, rd.space);
    RadicalOptions qopts = opts;
    qopts.op_budget = opts.op_budget / 4 + 1;
    RadicalData qrad = radical_charpoly_chain(QA.Q, qopts);
    if (qrad.dim() != 0) throw FrdError("radical_from_candidate: quotient is not semisimple");
    auto nil = ideal_nilpotency_index(A, rd.space, opts.op_budget);
    if (nil) {
        rd.nil_index = *nil;
        rd.method = "candidate";
        rd.certified = true;
        return rd;
    }
    if (!opts.allow_uncertified)
        throw FrdError("radical_from_candidate: nilpotency check busted the budget");
    // sampled nilpotency: random ideal elements must square down to zero
    std::mt19937_64 rng(opts.seed + A.dim);
    const auto& rows = rd.space.basis();
    for (uint32_t t = 0; t < 24 && !rows.empty(); ++t) {
        SpVec v;
        for (uint32_t s = 0; s < 3; ++s) {
            const Vec& row = rows[rng() % rows.size()];
            uint32_t c = 1 + static_cast<uint32_t>(rng() % (F.p() - 1));
            spv_axpy(v, c, to_sparse(row));
        }
        spv_normalize(v, F);
        uint32_t steps = 0;
        while (!v.empty() && steps < 24) {
            v = A.multiply(v, v);
            ++steps;
        }
        if (!v.empty()) throw FrdError("radical_from_candidate: sampled element not nilpotent");
    }
    rd.nil_index = 0;
    rd.method = "candidate-sampled";
    rd.certified = false;
    return rd;
}

/// Dispatch: local fast path, commutative Frobenius kernel, then the general
/// chain under the dimension cap.  Callers with big structured algebras pass
/// generators through radical_from_candidate instead.
inline RadicalData jacobson_radical(const FiniteDimAlgebra& A, const RadicalOptions& opts = {}) {
    if (A.aug) {
        auto loc = radical_local(A, opts);
        if (loc) return *loc;
    }
    bool commutative = opts.assume_commutative;
    if (!commutative && static_cast<uint64_t>(A.dim) * A.dim <= 1u << 22) {
        commutative = true;
        for (uint32_t i = 0; i < A.dim && commutative; ++i)
            for (uint32_t j = 0; j < i && commutative; ++j)
                if (!spv_equal(A.mul->product(i, j), A.mul->product(j, i))) commutative = false;
    }
    if (commutative) return radical_frobenius(A, opts);
    return radical_charpoly_chain(A, opts);
}

/// Char-p idempotent lifting: when e is idempotent modulo a nil ideal,
/// iterated p-th powers stabilize to an idempotent ((e^2-e)^{p^s} = 0 kills
/// the defect inside the commutative subalgebra k[e]).
inline SpVec lift_idempotent(const FiniteDimAlgebra& A, SpVec e, uint32_t max_iters = 40) {
    for (uint32_t it = 0; it < max_iters; ++it) {
        SpVec e2 = A.multiply(e, e);
        if (spv_equal(e2, e)) return e;
        e = A.power(e, A.F.p());
    }
    throw FrdError("lift_idempotent: did not stabilize");
}

}  // namespace frd
