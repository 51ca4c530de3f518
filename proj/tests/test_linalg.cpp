#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "frobdouble/linalg.hpp"

using namespace frd;

namespace {

SparseMatrix from_rows(const std::vector<Vec>& rows, uint32_t cols, const Fp& F) {
    SparseMatrix m;
    m.rows = static_cast<uint32_t>(rows.size());
    m.cols = cols;
    for (uint32_t r = 0; r < rows.size(); ++r)
        for (uint32_t c = 0; c < cols; ++c)
            if (rows[r][c] % F.p()) m.entries.emplace_back(r, c, rows[r][c] % F.p());
    return m;
}

SparseMatrix random_matrix(uint32_t rows, uint32_t cols, double fill, const Fp& F,
                           std::mt19937_64& rng) {
    SparseMatrix m;
    m.rows = rows;
    m.cols = cols;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<uint32_t> val(1, F.p() - 1);
    for (uint32_t r = 0; r < rows; ++r)
        for (uint32_t c = 0; c < cols; ++c)
            if (coin(rng) < fill) m.entries.emplace_back(r, c, val(rng));
    return m;
}

}  // namespace

TEST_CASE("fp arithmetic basics") {
    Fp F(5);
    REQUIRE(F.p() == 5);
    REQUIRE(F.add(3, 4) == 2);
    REQUIRE(F.sub(1, 3) == 3);
    REQUIRE(F.mul(3, 4) == 2);
    REQUIRE(F.neg(0) == 0);
    for (uint32_t x = 1; x < 5; ++x) REQUIRE(F.mul(x, F.inv(x)) == 1);
    REQUIRE(F.pow(2, 0) == 1);
    REQUIRE(F.pow(2, 4) == 1);
    REQUIRE(F.from_int(-1) == 4);
    REQUIRE(F.from_int(-10) == 0);
    REQUIRE_THROWS_AS(Fp(4), FrdError);
    REQUIRE_THROWS_AS(Fp(1), FrdError);
}

TEST_CASE("binomials via Lucas") {
    Fp F3(3);
    // C(4,2)=6 => 0 mod 3; C(3,1)=3 => 0; C(4,1)=4 => 1
    REQUIRE(binom_mod_p(F3, 4, 2) == 0);
    REQUIRE(binom_mod_p(F3, 3, 1) == 0);
    REQUIRE(binom_mod_p(F3, 4, 1) == 1);
    REQUIRE(binom_mod_p(F3, 10, 10) == 1);
    REQUIRE(binom_mod_p(F3, 5, 7) == 0);
    Fp F5(5);
    // C(6,3)=20 => 0 mod 5; C(7,2)=21 => 1 mod 5
    REQUIRE(binom_mod_p(F5, 6, 3) == 0);
    REQUIRE(binom_mod_p(F5, 7, 2) == 1);
    // multinomial (2,1,1): 4!/(2!1!1!) = 12 => 2 mod 5
    REQUIRE(multinomial_mod_p(F5, {2, 1, 1}) == 2);
}

TEST_CASE("rref kernel frozen example") {
    // Over F_3, [[1,1],[2,2]] has rank 1 and canonical kernel basis (1,2).
    Fp F(3);
    auto M = from_rows({{1, 1}, {2, 2}}, 2, F);
    auto res = rref_kernel(M, F);
    REQUIRE(res.rank == 1);
    REQUIRE(res.kernel.size() == 1);
    REQUIRE(res.kernel[0] == Vec{1, 2});
}

TEST_CASE("solve_linear echelon-canonical frozen example") {
    // Over F_3, [[1,2]] x = (1): canonical solution sets the free variable to
    // zero, giving (1,0).  Cross-check by enumerating all 9 vectors.
    Fp F(3);
    auto M = from_rows({{1, 2}}, 2, F);
    auto x = solve_linear(M, {1}, F);
    REQUIRE(x.has_value());
    REQUIRE(*x == Vec{1, 0});
    std::vector<Vec> sols;
    for (uint32_t a = 0; a < 3; ++a)
        for (uint32_t b = 0; b < 3; ++b)
            if (F.add(a, F.mul(2, b)) == 1) sols.push_back({a, b});
    REQUIRE(sols.size() == 3);
    REQUIRE(std::find(sols.begin(), sols.end(), *x) != sols.end());
}

TEST_CASE("solve_linear detects inconsistency") {
    Fp F(3);
    auto M = from_rows({{1, 1}, {2, 2}}, 2, F);
    REQUIRE_FALSE(solve_linear(M, {1, 1}, F).has_value());
    REQUIRE(solve_linear(M, {1, 2}, F).has_value());
}

TEST_CASE("rank equals rank of transpose") {
    Fp F(5);
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        auto M = random_matrix(8, 11, 0.3, F, rng);
        REQUIRE(rank_of(M, F) == rank_of(M.transposed(), F));
    }
}

TEST_CASE("kernel vectors annihilate and have right count") {
    Fp F(3);
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        auto M = random_matrix(7, 10, 0.4, F, rng);
        auto res = rref_kernel(M, F);
        REQUIRE(res.rank + res.kernel.size() == 10);
        DenseMat D = to_dense(M);
        for (auto& v : res.kernel) {
            Vec img = matvec(D, v, F);
            for (uint32_t x : img) REQUIRE(x == 0);
        }
        // kernel basis is linearly independent
        SparseMatrix K = from_rows(res.kernel, 10, F);
        REQUIRE(rank_of(K, F) == res.kernel.size());
    }
}

TEST_CASE("solve roundtrip on consistent systems") {
    Fp F(5);
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        auto M = random_matrix(9, 6, 0.5, F, rng);
        DenseMat D = to_dense(M);
        Vec x0(6);
        std::uniform_int_distribution<uint32_t> val(0, 4);
        for (auto& v : x0) v = val(rng);
        Vec b = matvec(D, x0, F);
        auto x = solve_linear(M, b, F);
        REQUIRE(x.has_value());
        REQUIRE(matvec(D, *x, F) == b);
    }
}

TEST_CASE("LinearSolver matches solve_linear") {
    Fp F(3);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        auto M = random_matrix(8, 8, 0.4, F, rng);
        DenseMat D = to_dense(M);
        LinearSolver S(D, F);
        REQUIRE(S.rank() == rank_of(M, F));
        std::uniform_int_distribution<uint32_t> val(0, 2);
        for (int k = 0; k < 5; ++k) {
            Vec b(8);
            for (auto& v : b) v = val(rng);
            auto x1 = solve_linear(M, b, F);
            auto x2 = S.solve(b);
            REQUIRE(x1.has_value() == x2.has_value());
            if (x1) {
                REQUIRE(*x1 == *x2);
                REQUIRE(matvec(D, *x2, F) == b);
            }
        }
    }
}

TEST_CASE("RowSpace insert, contains, coordinates") {
    Fp F(3);
    RowSpace V(4, F);
    REQUIRE(V.insert({1, 2, 0, 1}));
    REQUIRE(V.insert({0, 1, 1, 0}));
    REQUIRE_FALSE(V.insert({1, 0, 1, 1}));  // = row1 - 2*row2
    REQUIRE(V.dim() == 2);
    REQUIRE(V.contains({2, 0, 2, 2}));  // 2*(1,2,0,1) + 2*(0,1,1,0)
    REQUIRE_FALSE(V.contains({1, 0, 0, 0}));
    Vec v = {2, 0, 2, 2};
    Vec c = V.coordinates(v);
    REQUIRE(c.size() == 2);
    // reconstruct
    Vec chk(4, 0);
    for (uint32_t k = 0; k < 2; ++k)
        for (uint32_t j = 0; j < 4; ++j)
            chk[j] = F.add(chk[j], F.mul(c[k], V.basis()[k][j]));
    REQUIRE(chk == v);
    REQUIRE_THROWS_AS(V.coordinates(Vec{1, 0, 0, 0}), FrdError);
}

TEST_CASE("RowSpace quotient coordinates") {
    Fp F(5);
    RowSpace V(3, F);
    V.insert({1, 0, 2});
    Vec q = V.quotient_coordinates({0, 3, 1});
    REQUIRE(q.size() == 2);
    REQUIRE(q == Vec{3, 1});
    // vectors in the subspace have zero quotient coordinates
    Vec q2 = V.quotient_coordinates({2, 0, 4});
    REQUIRE(q2 == Vec{0, 0});
}

TEST_CASE("sparse vector helpers") {
    Fp F(3);
    SpVec a = {{0, 1}, {2, 2}};
    SpVec b = {{0, 2}, {1, 1}};
    SpVec s = spv_add(a, b, F);
    REQUIRE(s == SpVec{{1, 1}, {2, 2}});
    SpVec sc = spv_scale(a, 2, F);
    REQUIRE(sc == SpVec{{0, 2}, {2, 1}});
    REQUIRE(spv_scale(a, 3, F).empty());
    SpVec m = {{2, 2}, {0, 4}, {2, 1}};
    spv_normalize(m, F);
    REQUIRE(m == SpVec{{0, 1}});
    REQUIRE(to_dense(a, 3) == Vec{1, 0, 2});
    REQUIRE(to_sparse(Vec{0, 2, 0, 1}) == SpVec{{1, 2}, {3, 1}});
}

TEST_CASE("determinism: identical inputs give identical outputs") {
    Fp F(3);
    std::mt19937_64 rng1(5), rng2(5);
    auto M1 = random_matrix(12, 15, 0.3, F, rng1);
    auto M2 = random_matrix(12, 15, 0.3, F, rng2);
    auto r1 = rref_kernel(M1, F);
    auto r2 = rref_kernel(M2, F);
    REQUIRE(r1.rank == r2.rank);
    REQUIRE(r1.kernel == r2.kernel);
}

TEST_CASE("sparse matrix canonicalize merges duplicates") {
    Fp F(3);
    SparseMatrix m;
    m.rows = 2;
    m.cols = 2;
    m.entries = {{1, 0, 2}, {0, 0, 1}, {1, 0, 1}, {0, 1, 3}};
    m.canonicalize(F);
    REQUIRE(m.entries.size() == 1);
    REQUIRE(m.entries[0] == std::tuple<uint32_t, uint32_t, uint32_t>(0, 0, 1));
}
