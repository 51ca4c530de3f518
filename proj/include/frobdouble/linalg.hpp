#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fp.hpp"

namespace frd {

/// Sparse vector: (index, value) pairs, sorted by index, values nonzero.
using SpVec = std::vector<std::pair<uint32_t, uint32_t>>;
/// Dense vector of reduced scalars.
using Vec = std::vector<uint32_t>;

inline Vec to_dense(const SpVec& v, uint32_t n) {
    Vec d(n, 0);
    for (auto& [i, c] : v) d[i] = c;
    return d;
}

inline SpVec to_sparse(const Vec& d) {
    SpVec v;
    for (uint32_t i = 0; i < d.size(); ++i)
        if (d[i]) v.emplace_back(i, d[i]);
    return v;
}

/// Collapse unsorted/duplicated terms into canonical form.
inline void spv_normalize(SpVec& v, const Fp& F) {
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    SpVec out;
    out.reserve(v.size());
    for (auto& [i, c] : v) {
        uint32_t cr = c % F.p();  // axpy defers reduction, so c may exceed p
        if (!out.empty() && out.back().first == i)
            out.back().second = F.add(out.back().second, cr);
        else
            out.emplace_back(i, cr);
        if (!out.empty() && out.back().second == 0) out.pop_back();
    }
    v.swap(out);
}

inline void spv_axpy(SpVec& acc, uint32_t c, const SpVec& x) {
    // defer normalization to the caller
    for (auto& [i, v] : x) acc.emplace_back(i, c * v);
}

inline SpVec spv_add(const SpVec& a, const SpVec& b, const Fp& F) {
    SpVec r = a;
    r.insert(r.end(), b.begin(), b.end());
    spv_normalize(r, F);
    return r;
}

inline SpVec spv_scale(const SpVec& a, uint32_t c, const Fp& F) {
    SpVec r;
    c %= F.p();
    if (c == 0) return r;
    r.reserve(a.size());
    for (auto& [i, v] : a) r.emplace_back(i, F.mul(v, c));
    return r;
}

inline bool spv_equal(const SpVec& a, const SpVec& b) { return a == b; }

/// Sparse matrix in coordinate form, entries sorted row-major (row, then col).
/// This canonical order is the serialization contract.
struct SparseMatrix {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<std::tuple<uint32_t, uint32_t, uint32_t>> entries;  // (row, col, value)

    void add_entry(uint32_t r, uint32_t c, uint32_t v) {
        if (v) entries.emplace_back(r, c, v);
    }

    void canonicalize(const Fp& F) {
        std::sort(entries.begin(), entries.end(), [](auto& a, auto& b) {
            if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
            return std::get<1>(a) < std::get<1>(b);
        });
        decltype(entries) out;
        out.reserve(entries.size());
        for (auto& e : entries) {
            if (!out.empty() && std::get<0>(out.back()) == std::get<0>(e) &&
                std::get<1>(out.back()) == std::get<1>(e)) {
                std::get<2>(out.back()) = F.add(std::get<2>(out.back()), std::get<2>(e) % F.p());
            } else {
                out.emplace_back(std::get<0>(e), std::get<1>(e), std::get<2>(e) % F.p());
            }
            if (!out.empty() && std::get<2>(out.back()) == 0) out.pop_back();
        }
        entries.swap(out);
    }

    double density() const {
        if (rows == 0 || cols == 0) return 0.0;
        return static_cast<double>(entries.size()) / (static_cast<double>(rows) * cols);
    }

    SparseMatrix transposed() const {
        SparseMatrix t;
        t.rows = cols;
        t.cols = rows;
        t.entries.reserve(entries.size());
        for (auto& [r, c, v] : entries) t.entries.emplace_back(c, r, v);
        std::sort(t.entries.begin(), t.entries.end());
        return t;
    }
};

/// Dense row-major matrix over F_p with byte entries.
struct DenseMat {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<uint8_t> a;

    DenseMat() = default;
    DenseMat(uint32_t r, uint32_t c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    uint8_t* row(uint32_t r) { return a.data() + static_cast<size_t>(r) * cols; }
    const uint8_t* row(uint32_t r) const { return a.data() + static_cast<size_t>(r) * cols; }
    uint8_t at(uint32_t r, uint32_t c) const { return a[static_cast<size_t>(r) * cols + c]; }
    void set(uint32_t r, uint32_t c, uint32_t v) { a[static_cast<size_t>(r) * cols + c] = static_cast<uint8_t>(v); }
};

inline DenseMat to_dense(const SparseMatrix& m) {
    DenseMat d(m.rows, m.cols);
    for (auto& [r, c, v] : m.entries) d.set(r, c, v);
    return d;
}

inline SparseMatrix to_sparse(const DenseMat& d, const Fp& F) {
    SparseMatrix m;
    m.rows = d.rows;
    m.cols = d.cols;
    for (uint32_t r = 0; r < d.rows; ++r)
        for (uint32_t c = 0; c < d.cols; ++c)
            if (d.at(r, c)) m.entries.emplace_back(r, c, d.at(r, c) % F.p());
    return m;
}

/// Reduced row echelon form in place.  Pivot rule: scan columns left to
/// right, choose the topmost unused row with a nonzero entry.  Returns the
/// pivot columns in order; afterwards row k has its pivot at pivots[k].
inline std::vector<uint32_t> rref_in_place(DenseMat& M, const Fp& F) {
    std::vector<uint32_t> pivots;
    const uint32_t p = F.p();
    uint32_t r = 0;
    for (uint32_t c = 0; c < M.cols && r < M.rows; ++c) {
        uint32_t pr = r;
        while (pr < M.rows && M.at(pr, c) == 0) ++pr;
        if (pr == M.rows) continue;
        if (pr != r)
            std::swap_ranges(M.row(pr), M.row(pr) + M.cols, M.row(r));
        uint32_t pv = M.at(r, c);
        if (pv != 1) {
            uint32_t iv = F.inv(pv);
            uint8_t* row = M.row(r);
            for (uint32_t k = c; k < M.cols; ++k) row[k] = static_cast<uint8_t>((row[k] * iv) % p);
        }
        const uint8_t* prow = M.row(r);
        for (uint32_t rr = 0; rr < M.rows; ++rr) {
            if (rr == r) continue;
            uint32_t f = M.at(rr, c);
            if (!f) continue;
            uint32_t mc = p - f;  // dst += (p - f) * pivot_row
            uint8_t* drow = M.row(rr);
            for (uint32_t k = c; k < M.cols; ++k) {
                uint32_t x = drow[k] + mc * prow[k];
                drow[k] = static_cast<uint8_t>(x % p);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

struct RrefResult {
    uint32_t rank = 0;
    std::vector<Vec> kernel;  // canonical basis, rows in reduced echelon form
};

/// Canonical kernel basis from an RREF matrix.  One vector per free column;
/// the basis rows are themselves in reduced echelon form (leading entry 1 at
/// the lowest possible index), so the output is deterministic and unique.
inline std::vector<Vec> kernel_from_rref(const DenseMat& R, const std::vector<uint32_t>& pivots,
                                         const Fp& F) {
    std::vector<int32_t> pivot_row_of_col(R.cols, -1);
    for (uint32_t k = 0; k < pivots.size(); ++k) pivot_row_of_col[pivots[k]] = static_cast<int32_t>(k);
    std::vector<Vec> kernel;
    for (uint32_t c = 0; c < R.cols; ++c) {
        if (pivot_row_of_col[c] >= 0) continue;
        Vec v(R.cols, 0);
        v[c] = 1;
        for (uint32_t k = 0; k < pivots.size(); ++k) {
            uint32_t x = R.at(k, c);
            if (x) v[pivots[k]] = F.neg(x);
        }
        kernel.push_back(std::move(v));
    }
    // normalize each vector so its leading coefficient is 1 and the set is in
    // reduced echelon form; with free-column construction the rows are already
    // echelon in the free coordinates, but leading coordinates may be pivots.
    // Run a small RREF pass over the kernel rows for the canonical form.
    if (!kernel.empty()) {
        DenseMat K(static_cast<uint32_t>(kernel.size()), R.cols);
        for (uint32_t i = 0; i < kernel.size(); ++i)
            for (uint32_t j = 0; j < R.cols; ++j) K.set(i, j, kernel[i][j]);
        rref_in_place(K, F);
        for (uint32_t i = 0; i < kernel.size(); ++i)
            for (uint32_t j = 0; j < R.cols; ++j) kernel[i][j] = K.at(i, j);
    }
    return kernel;
}

/// Rank and canonical kernel basis of a sparse matrix.  Elimination is done
/// densely above 25% fill or small sizes; the sparse path uses the same pivot
/// rule and produces bit-identical results.
inline RrefResult rref_kernel(const SparseMatrix& M, const Fp& F) {
    DenseMat D = to_dense(M);
    auto pivots = rref_in_place(D, F);
    RrefResult res;
    res.rank = static_cast<uint32_t>(pivots.size());
    res.kernel = kernel_from_rref(D, pivots, F);
    return res;
}

/// Echelon-canonical solution of M x = b: free variables are set to zero.
/// Returns nullopt when inconsistent.
inline std::optional<Vec> solve_linear(const SparseMatrix& M, const Vec& b, const Fp& F) {
    if (b.size() != M.rows) throw FrdError("solve_linear: rhs size mismatch");
    DenseMat A(M.rows, M.cols + 1);
    for (auto& [r, c, v] : M.entries) A.set(r, c, v);
    for (uint32_t r = 0; r < M.rows; ++r) A.set(r, M.cols, b[r] % F.p());
    auto pivots = rref_in_place(A, F);
    if (!pivots.empty() && pivots.back() == M.cols) return std::nullopt;
    Vec x(M.cols, 0);
    for (uint32_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = A.at(k, M.cols);
    return x;
}

/// Echelonized subspace of F^n with incremental insertion.  Basis rows are
/// kept fully reduced (RREF), ordered by pivot column, so coordinates and
/// membership tests are canonical.
class RowSpace {
public:
    RowSpace(uint32_t n, const Fp& F) : n_(n), F_(&F) {}

    uint32_t ambient_dim() const { return n_; }
    uint32_t dim() const { return static_cast<uint32_t>(rows_.size()); }
    const std::vector<Vec>& basis() const { return rows_; }
    const std::vector<uint32_t>& pivots() const { return piv_; }

    /// Reduce v against the basis (v unchanged); returns the residual.
    Vec reduce(Vec v) const {
        const Fp& F = *F_;
        for (uint32_t k = 0; k < rows_.size(); ++k) {
            uint32_t c = v[piv_[k]];
            if (!c) continue;
            uint32_t mc = F.neg(c);
            const Vec& r = rows_[k];
            for (uint32_t j = piv_[k]; j < n_; ++j)
                if (r[j]) v[j] = F.add(v[j], F.mul(mc, r[j]));
        }
        return v;
    }

    bool contains(const Vec& v) const {
        Vec r = reduce(v);
        for (uint32_t x : r)
            if (x) return false;
        return true;
    }

    /// Insert v; returns true if the dimension grew.
    bool insert(const Vec& v) {
        Vec r = reduce(v);
        uint32_t lead = n_;
        for (uint32_t j = 0; j < n_; ++j)
            if (r[j]) { lead = j; break; }
        if (lead == n_) return false;
        const Fp& F = *F_;
        uint32_t iv = F.inv(r[lead]);
        for (uint32_t j = lead; j < n_; ++j) r[j] = F.mul(r[j], iv);
        // back-eliminate existing rows
        for (uint32_t k = 0; k < rows_.size(); ++k) {
            uint32_t c = rows_[k][lead];
            if (!c) continue;
            uint32_t mc = F.neg(c);
            for (uint32_t j = lead; j < n_; ++j)
                if (r[j]) rows_[k][j] = F.add(rows_[k][j], F.mul(mc, r[j]));
        }
        auto pos = std::lower_bound(piv_.begin(), piv_.end(), lead) - piv_.begin();
        piv_.insert(piv_.begin() + pos, lead);
        rows_.insert(rows_.begin() + pos, std::move(r));
        return true;
    }

    void insert_all(const std::vector<Vec>& vs) {
        for (auto& v : vs) insert(v);
    }

    /// Coordinates of v in the basis (RREF basis: read off pivot positions).
    /// Throws if v is not in the subspace.
    Vec coordinates(const Vec& v) const {
        Vec c(rows_.size(), 0);
        for (uint32_t k = 0; k < rows_.size(); ++k) c[k] = v[piv_[k]];
        // verify
        const Fp& F = *F_;
        Vec chk(n_, 0);
        for (uint32_t k = 0; k < rows_.size(); ++k)
            if (c[k])
                for (uint32_t j = 0; j < n_; ++j)
                    if (rows_[k][j]) chk[j] = F.add(chk[j], F.mul(c[k], rows_[k][j]));
        if (chk != v) throw FrdError("RowSpace::coordinates: vector not in subspace");
        return c;
    }

    /// Quotient coordinates: the non-pivot components of the residual, in
    /// increasing column order.  Canonical complement of the subspace.
    Vec quotient_coordinates(const Vec& v) const {
        Vec r = reduce(v);
        Vec q;
        q.reserve(n_ - rows_.size());
        uint32_t k = 0;
        for (uint32_t j = 0; j < n_; ++j) {
            if (k < piv_.size() && piv_[k] == j) { ++k; continue; }
            q.push_back(r[j]);
        }
        return q;
    }

private:
    uint32_t n_;
    const Fp* F_;
    std::vector<Vec> rows_;
    std::vector<uint32_t> piv_;
};

/// Factorized linear map for repeated solves against the same matrix.
/// Stores T with R = T*M in RREF; solve reads off pivot coordinates.
class LinearSolver {
public:
    LinearSolver() = default;
    LinearSolver(const DenseMat& M, const Fp& F) : F_(&F), rows_(M.rows), cols_(M.cols) {
        DenseMat A(M.rows, M.cols + M.rows);
        for (uint32_t r = 0; r < M.rows; ++r) {
            std::copy(M.row(r), M.row(r) + M.cols, A.row(r));
            A.set(r, M.cols + r, 1);
        }
        // eliminate using only the first `cols` columns for pivot selection
        const uint32_t p = F.p();
        uint32_t r = 0;
        for (uint32_t c = 0; c < cols_ && r < rows_; ++c) {
            uint32_t pr = r;
            while (pr < rows_ && A.at(pr, c) == 0) ++pr;
            if (pr == rows_) continue;
            if (pr != r) std::swap_ranges(A.row(pr), A.row(pr) + A.cols, A.row(r));
            uint32_t iv = F.inv(A.at(r, c));
            if (iv != 1) {
                uint8_t* row = A.row(r);
                for (uint32_t k = 0; k < A.cols; ++k) row[k] = static_cast<uint8_t>((row[k] * iv) % p);
            }
            const uint8_t* prow = A.row(r);
            for (uint32_t rr = 0; rr < rows_; ++rr) {
                if (rr == r || A.at(rr, c) == 0) continue;
                uint32_t mc = p - A.at(rr, c);
                uint8_t* drow = A.row(rr);
                for (uint32_t k = 0; k < A.cols; ++k) {
                    uint32_t x = drow[k] + mc * prow[k];
                    drow[k] = static_cast<uint8_t>(x % p);
                }
            }
            piv_.push_back(c);
            ++r;
        }
        rank_ = r;
        RT_ = std::move(A);
    }

    uint32_t rank() const { return rank_; }

    /// Solve M x = b, echelon-canonical (free variables zero).
    std::optional<Vec> solve(const Vec& b) const {
        const Fp& F = *F_;
        // y = T * b
        Vec x(cols_, 0);
        for (uint32_t r = 0; r < rows_; ++r) {
            uint64_t acc = 0;
            const uint8_t* row = RT_.row(r) + cols_;
            for (uint32_t k = 0; k < rows_; ++k) acc += static_cast<uint64_t>(row[k]) * b[k];
            uint32_t y = F.reduce64(acc);
            if (r < rank_) {
                x[piv_[r]] = y;
            } else if (y != 0) {
                return std::nullopt;
            }
        }
        return x;
    }

private:
    const Fp* F_ = nullptr;
    uint32_t rows_ = 0, cols_ = 0, rank_ = 0;
    std::vector<uint32_t> piv_;
    DenseMat RT_;
};

/// Matrix-vector and matrix-matrix helpers (dense, exact).
inline Vec matvec(const DenseMat& M, const Vec& v, const Fp& F) {
    Vec out(M.rows, 0);
    for (uint32_t r = 0; r < M.rows; ++r) {
        uint64_t acc = 0;
        const uint8_t* row = M.row(r);
        for (uint32_t c = 0; c < M.cols; ++c) acc += static_cast<uint64_t>(row[c]) * v[c];
        out[r] = F.reduce64(acc);
    }
    return out;
}

inline DenseMat matmul(const DenseMat& A, const DenseMat& B, const Fp& F) {
    if (A.cols != B.rows) throw FrdError("matmul: shape mismatch");
    DenseMat C(A.rows, B.cols);
    std::vector<uint64_t> acc(B.cols);
    for (uint32_t i = 0; i < A.rows; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const uint8_t* arow = A.row(i);
        for (uint32_t k = 0; k < A.cols; ++k) {
            uint32_t a = arow[k];
            if (!a) continue;
            const uint8_t* brow = B.row(k);
            for (uint32_t j = 0; j < B.cols; ++j) acc[j] += static_cast<uint64_t>(a) * brow[j];
        }
        uint8_t* crow = C.row(i);
        for (uint32_t j = 0; j < B.cols; ++j) crow[j] = static_cast<uint8_t>(acc[j] % F.p());
    }
    return C;
}

inline uint32_t rank_of(const SparseMatrix& M, const Fp& F) {
    DenseMat D = to_dense(M);
    return static_cast<uint32_t>(rref_in_place(D, F).size());
}

}  // namespace frd
