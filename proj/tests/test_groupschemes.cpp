#include <catch2/catch_amalgamated.hpp>

#include "frobdouble/group_schemes.hpp"
#include "test_util.hpp"

using frdtest::failure_summary;
using frdtest::truncated_additive;

using namespace frd;

namespace {

GroupSchemeSpec gs(Family f, uint32_t nd, uint32_t p, uint32_t r) { return {f, nd, p, r}; }

// sum f_2 (x) S(f_1) f_3, computed from the iterated comultiplication.  This
// is the Hopf-theoretic form of conjugation and must agree with the
// symbolically conjugated coaction rows.
SpVec adjoint_formula(const HopfAlgebra& H, uint32_t f) {
    const Fp& F = H.A.F;
    const uint32_t d = H.A.dim;
    SpVec acc;
    for (auto& [gh, c1] : H.co->comult(f)) {
        uint32_t g = gh / d, h = gh % d;
        for (auto& [ab, c2] : H.co->comult(g)) {
            uint32_t a = ab / d, b = ab % d;
            SpVec prod = H.A.multiply(H.ant->apply_basis(a), SpVec{{h, 1}});
            uint32_t c12 = F.mul(c1, c2);
            for (auto& [k, c3] : prod) acc.emplace_back(b * d + k, F.mul(c12, c3));
        }
    }
    spv_normalize(acc, F);
    return acc;
}

}  // namespace

TEST_CASE("catalog dimensions follow q^(dim G)") {
    struct Row {
        GroupSchemeSpec s;
        uint32_t dim;
    };
    std::vector<Row> rows = {
        {gs(Family::AdditiveGroup, 1, 3, 1), 3},   {gs(Family::AdditiveGroup, 1, 3, 2), 9},
        {gs(Family::AdditiveGroup, 2, 5, 1), 25},  {gs(Family::Torus, 1, 3, 2), 9},
        {gs(Family::Torus, 2, 3, 1), 9},           {gs(Family::Unitriangular, 2, 3, 1), 3},
        {gs(Family::Unitriangular, 3, 3, 1), 27},  {gs(Family::Unitriangular, 3, 5, 2), 15625},
        {gs(Family::GL, 1, 3, 1), 3},              {gs(Family::GL, 2, 3, 1), 81},
        {gs(Family::GL, 2, 3, 2), 6561},           {gs(Family::BorelGL2, 0, 3, 1), 27},
        {gs(Family::BorelGL2, 0, 5, 2), 15625},
    };
    for (auto& row : rows) {
        MonCoords cs = coord_system(row.s);
        INFO(spec_label(row.s));
        REQUIRE(cs.dim() == row.dim);
    }
}

TEST_CASE("spec validation rejects bad parameters") {
    REQUIRE_THROWS_AS(validate_spec(gs(Family::AdditiveGroup, 1, 4, 1)), FrdError);
    REQUIRE_THROWS_AS(validate_spec(gs(Family::AdditiveGroup, 1, 2, 1)), FrdError);
    REQUIRE_THROWS_AS(validate_spec(gs(Family::AdditiveGroup, 1, 3, 0)), FrdError);
    REQUIRE_THROWS_AS(validate_spec(gs(Family::Torus, 0, 3, 1)), FrdError);
    REQUIRE_NOTHROW(validate_spec(gs(Family::AdditiveGroup, 1, 2, 2)));
}

TEST_CASE("additive coordinate ring matches the handmade oracle") {
    for (auto [p, r, q] : {std::tuple<uint32_t, uint32_t, uint32_t>{3, 1, 3}, {3, 2, 9}, {5, 1, 5}}) {
        auto H = coordinate_hopf(gs(Family::AdditiveGroup, 1, p, r));
        auto O = truncated_additive(p, q);
        INFO("p=" << p << " r=" << r);
        REQUIRE(H.A.dim == q);
        REQUIRE(spv_equal(H.A.unit, O.A.unit));
        REQUIRE(*H.A.aug == *O.A.aug);
        for (uint32_t i = 0; i < q; ++i) {
            REQUIRE(spv_equal(H.co->comult(i), O.co->comult(i)));
            REQUIRE(spv_equal(H.ant->apply_basis(i), O.ant->apply_basis(i)));
            for (uint32_t j = 0; j < q; ++j)
                REQUIRE(spv_equal(H.A.mul->product(i, j), O.A.mul->product(i, j)));
        }
    }
}

TEST_CASE("frozen comultiplication rows") {
    SECTION("GL2, p=3, r=1") {
        auto H = coordinate_hopf(gs(Family::GL, 2, 3, 1));
        REQUIRE(H.A.dim == 81);
        REQUIRE(H.gens == std::vector<uint32_t>{1, 3, 9, 27});
        REQUIRE(spv_equal(H.co->comult(1), SpVec{{82, 1}, {252, 1}}));    // x11.x11 + x12.x21
        REQUIRE(spv_equal(H.co->comult(3), SpVec{{84, 1}, {270, 1}}));    // x11.x12 + x12.x22
        REQUIRE(spv_equal(H.co->comult(9), SpVec{{730, 1}, {2196, 1}}));  // x21.x11 + x22.x21
    }
    SECTION("U3, p=3, r=1") {
        auto H = coordinate_hopf(gs(Family::Unitriangular, 3, 3, 1));
        REQUIRE(H.A.dim == 27);
        // Delta(x13) = 1.x13 + x12.x23 + x13.1
        REQUIRE(spv_equal(H.co->comult(3), SpVec{{3, 1}, {36, 1}, {81, 1}}));
    }
    SECTION("BorelGL2, p=3, r=1") {
        auto H = coordinate_hopf(gs(Family::BorelGL2, 0, 3, 1));
        REQUIRE(H.A.dim == 27);
        REQUIRE(H.A.labels[1] == "x11");
        REQUIRE(H.A.labels[3] == "x12");
        REQUIRE(H.A.labels[9] == "x22");
        // Delta(x12) = x11.x12 + x12.x22
        REQUIRE(spv_equal(H.co->comult(3), SpVec{{30, 1}, {90, 1}}));
        REQUIRE(spv_equal(H.co->comult(1), SpVec{{28, 1}}));  // x11 grouplike
    }
    SECTION("Torus, p=3, r=2") {
        auto H = coordinate_hopf(gs(Family::Torus, 1, 3, 2));
        for (uint32_t a = 0; a < 9; ++a) REQUIRE(spv_equal(H.co->comult(a), SpVec{{a * 9 + a, 1}}));
    }
}

TEST_CASE("frozen antipode rows") {
    SECTION("BorelGL2, p=3, r=1: S(x12) = -x11^2 x12 x22^2") {
        auto H = coordinate_hopf(gs(Family::BorelGL2, 0, 3, 1));
        REQUIRE(spv_equal(H.ant->apply_basis(3), SpVec{{23, 2}}));
        REQUIRE(spv_equal(H.ant->apply_basis(1), SpVec{{2, 1}}));  // S(x11) = x11^2
    }
    SECTION("U3, p=3, r=1: S(x13) = -x13 + x12 x23") {
        auto H = coordinate_hopf(gs(Family::Unitriangular, 3, 3, 1));
        REQUIRE(spv_equal(H.ant->apply_basis(3), SpVec{{3, 2}, {10, 1}}));
        REQUIRE(spv_equal(H.ant->apply_basis(1), SpVec{{1, 2}}));  // S(x12) = -x12
    }
    SECTION("Torus, p=3, r=2: S(x) = x^8") {
        auto H = coordinate_hopf(gs(Family::Torus, 1, 3, 2));
        REQUIRE(spv_equal(H.ant->apply_basis(1), SpVec{{8, 1}}));
    }
    SECTION("antipode is an involution (commutative case)") {
        for (auto s : {gs(Family::BorelGL2, 0, 3, 1), gs(Family::Unitriangular, 3, 3, 1),
                       gs(Family::GL, 2, 3, 1)}) {
            auto H = coordinate_hopf(s);
            for (uint32_t i = 0; i < H.A.dim; ++i) {
                SpVec ss = H.antipode(H.ant->apply_basis(i));
                INFO(spec_label(s) << " basis " << i);
                REQUIRE(spv_equal(ss, SpVec{{i, 1}}));
            }
        }
    }
}

TEST_CASE("axiom sweep over small catalog members") {
    std::vector<GroupSchemeSpec> specs = {
        gs(Family::AdditiveGroup, 1, 3, 1), gs(Family::AdditiveGroup, 2, 3, 1),
        gs(Family::AdditiveGroup, 1, 2, 2), gs(Family::AdditiveGroup, 1, 5, 1),
        gs(Family::Torus, 1, 3, 1),         gs(Family::Torus, 2, 3, 1),
        gs(Family::Torus, 1, 5, 1),         gs(Family::Unitriangular, 2, 3, 1),
        gs(Family::Unitriangular, 3, 3, 1), gs(Family::GL, 1, 3, 1),
        gs(Family::GL, 2, 3, 1),            gs(Family::BorelGL2, 0, 3, 1),
    };
    for (auto& s : specs) {
        auto H = coordinate_hopf(s);
        auto rep = verify_hopf_axioms(H);
        INFO(spec_label(s) << ": " << failure_summary(rep));
        REQUIRE(rep.pass);
        for (auto& c : rep.checks) {
            if (c.mode == "structural") continue;
            REQUIRE(c.mode == "full");
            REQUIRE(c.skipped == 0);
        }
    }
}

TEST_CASE("group algebra closed form equals the generic dual") {
    for (auto s : {gs(Family::AdditiveGroup, 1, 3, 2), gs(Family::Torus, 1, 3, 2),
                   gs(Family::BorelGL2, 0, 3, 1), gs(Family::Unitriangular, 3, 3, 1)}) {
        auto K = group_algebra(s);
        auto D = dual_hopf(coordinate_hopf(s));
        INFO(spec_label(s));
        REQUIRE(K.A.dim == D.A.dim);
        REQUIRE(spv_equal(K.A.unit, D.A.unit));
        REQUIRE(*K.A.aug == *D.A.aug);
        for (uint32_t i = 0; i < K.A.dim; ++i) {
            REQUIRE(spv_equal(K.co->comult(i), D.co->comult(i)));
            REQUIRE(spv_equal(K.ant->apply_basis(i), D.ant->apply_basis(i)));
            for (uint32_t j = 0; j < K.A.dim; ++j)
                REQUIRE(spv_equal(K.A.mul->product(i, j), D.A.mul->product(i, j)));
        }
    }
}

TEST_CASE("group algebra structure constants") {
    SECTION("k(torus kernel) is spanned by orthogonal idempotents") {
        auto K = group_algebra(gs(Family::Torus, 1, 3, 1));
        for (uint32_t a = 0; a < 3; ++a)
            for (uint32_t b = 0; b < 3; ++b) {
                SpVec expect = (a == b) ? SpVec{{a, 1}} : SpVec{};
                REQUIRE(spv_equal(K.A.mul->product(a, b), expect));
            }
        // unit is the sum of the idempotents
        REQUIRE(spv_equal(K.A.unit, SpVec{{0, 1}, {1, 1}, {2, 1}}));
    }
    SECTION("k(additive kernel) is a divided-power dual with primitive u") {
        auto K = group_algebra(gs(Family::AdditiveGroup, 1, 3, 1));
        REQUIRE(spv_equal(K.A.mul->product(1, 1), SpVec{{2, 2}}));  // u^2 = 2 (t^2)*
        REQUIRE(spv_equal(K.A.multiply(K.A.mul->product(1, 1), SpVec{{1, 1}}), SpVec{}));
        REQUIRE(spv_equal(K.co->comult(1), SpVec{{1, 1}, {3, 1}}));  // u primitive
    }
    SECTION("group algebras pass the axiom suite") {
        for (auto s : {gs(Family::Unitriangular, 3, 3, 1), gs(Family::BorelGL2, 0, 3, 1),
                       gs(Family::GL, 2, 3, 1)}) {
            auto K = group_algebra(s);
            auto rep = verify_hopf_axioms(K);
            INFO(spec_label(s) << ": " << failure_summary(rep));
            REQUIRE(rep.pass);
        }
    }
    SECTION("dual multiplication budget is enforced") {
        REQUIRE_THROWS_AS(group_algebra(gs(Family::Unitriangular, 3, 3, 1), 10), FrdError);
    }
}

TEST_CASE("adjoint coaction of the Borel, frozen rows") {
    auto rho = adjoint_coaction(gs(Family::BorelGL2, 0, 3, 1));
    // rho(x12) = x12 . x11^2 x22 + x11 . x11^2 x12 - x22 . x11^2 x12
    REQUIRE(spv_equal(rho->comult(3), SpVec{{32, 1}, {92, 1}, {248, 2}}));
    // diagonal coordinates are conjugation-invariant in the Borel
    REQUIRE(spv_equal(rho->comult(1), SpVec{{27, 1}}));
    REQUIRE(spv_equal(rho->comult(9), SpVec{{243, 1}}));
}

TEST_CASE("adjoint coaction agrees with the Hopf formula") {
    for (auto s : {gs(Family::BorelGL2, 0, 3, 1), gs(Family::Unitriangular, 3, 3, 1),
                   gs(Family::AdditiveGroup, 2, 3, 1), gs(Family::Torus, 2, 3, 1)}) {
        auto H = coordinate_hopf(s);
        auto rho = adjoint_coaction(s);
        INFO(spec_label(s));
        for (uint32_t i = 0; i < H.A.dim; ++i) {
            INFO("basis " << i);
            REQUIRE(spv_equal(rho->comult(i), adjoint_formula(H, i)));
        }
    }
    // GL2 at full basis size is slow through the generic formula; generators
    // plus the multiplicativity of both sides cover the rest.
    auto s = gs(Family::GL, 2, 3, 1);
    auto H = coordinate_hopf(s);
    auto rho = adjoint_coaction(s);
    for (uint32_t g : H.gens) REQUIRE(spv_equal(rho->comult(g), adjoint_formula(H, g)));
}

TEST_CASE("adjoint coaction counit law") {
    for (auto s : {gs(Family::BorelGL2, 0, 3, 1), gs(Family::Unitriangular, 3, 3, 1)}) {
        auto H = coordinate_hopf(s);
        auto rho = adjoint_coaction(s);
        const uint32_t d = H.A.dim;
        for (uint32_t i = 0; i < d; ++i) {
            SpVec folded;
            for (auto& [ab, c] : rho->comult(i)) {
                uint32_t e = (*H.A.aug)[ab % d];
                if (e) folded.emplace_back(ab / d, H.A.F.mul(c, e));
            }
            spv_normalize(folded, H.A.F);
            INFO(spec_label(s) << " basis " << i);
            REQUIRE(spv_equal(folded, SpVec{{i, 1}}));
        }
    }
}

TEST_CASE("adjoint module is a representation of the group algebra") {
    auto s = gs(Family::BorelGL2, 0, 3, 1);
    auto K = group_algebra(s);
    auto R = adjoint_module(s);
    auto chk = representation_check(K.A, R);
    INFO(chk.first_failure);
    REQUIRE(chk.pass);

    // abelian kernels act trivially: xi . f = eps(xi) f
    auto s2 = gs(Family::AdditiveGroup, 1, 3, 2);
    auto R2 = adjoint_module(s2);
    for (uint32_t j = 0; j < 9; ++j) {
        for (auto& [r, c, m] : R2.action[j].entries) {
            REQUIRE(j == 0);
            REQUIRE(r == c);
            REQUIRE(m == 1);
        }
        REQUIRE(R2.action[j].entries.size() == (j == 0 ? 9 : 0));
    }
}

TEST_CASE("root-height grading is compatible with product and coproduct") {
    for (auto s : {gs(Family::Unitriangular, 3, 3, 1), gs(Family::GL, 2, 3, 1),
                   gs(Family::BorelGL2, 0, 3, 1)}) {
        auto H = coordinate_hopf(s);
        const auto& g = *H.A.grading;
        INFO(spec_label(s));
        for (uint32_t i = 0; i < H.A.dim; ++i) {
            for (uint32_t j = 0; j < H.A.dim; ++j)
                for (auto& [k, c] : H.A.mul->product(i, j))
                    for (size_t w = 0; w < g.mods.size(); ++w)
                        REQUIRE(g.deg[k][w] == g.deg[i][w] + g.deg[j][w]);
            for (auto& [ab, c] : H.co->comult(i))
                for (size_t w = 0; w < g.mods.size(); ++w)
                    REQUIRE(g.deg[ab / H.A.dim][w] + g.deg[ab % H.A.dim][w] == g.deg[i][w]);
        }
    }
}

TEST_CASE("cotangent basis lifts") {
    auto v = cotangent_basis(gs(Family::BorelGL2, 0, 3, 1));
    REQUIRE(v.size() == 3);
    REQUIRE(spv_equal(v[0], SpVec{{0, 2}, {1, 1}}));  // x11 - 1
    REQUIRE(spv_equal(v[1], SpVec{{3, 1}}));          // x12
    REQUIRE(spv_equal(v[2], SpVec{{0, 2}, {9, 1}}));  // x22 - 1

    auto w = cotangent_basis(gs(Family::AdditiveGroup, 2, 5, 1));
    REQUIRE(spv_equal(w[0], SpVec{{1, 1}}));
    REQUIRE(spv_equal(w[1], SpVec{{5, 1}}));
}

TEST_CASE("frobenius subalgebra splitting") {
    SECTION("additive group, p=3, r=1") {
        auto FS = frobenius_sub(gs(Family::AdditiveGroup, 1, 3, 1));
        REQUIRE(FS.ambient.A.dim == 9);
        REQUIRE(FS.qr == 3);
        REQUIRE(FS.gens.size() == 1);
        REQUIRE(spv_equal(FS.gens[0], SpVec{{3, 1}}));  // t^3
        REQUIRE(FS.sub_basis == std::vector<uint32_t>{0, 3, 6});
        REQUIRE(FS.split(4) == std::pair<uint32_t, uint32_t>{1, 1});
        REQUIRE(FS.fuse(1, 1) == 4);
        for (uint32_t i = 0; i < 9; ++i) {
            auto [lo, hi] = FS.split(i);
            REQUIRE(FS.fuse(lo, hi) == i);
        }
    }
    SECTION("torus gens are x^q - 1") {
        auto FS = frobenius_sub(gs(Family::Torus, 1, 3, 1));
        REQUIRE(spv_equal(FS.gens[0], SpVec{{0, 2}, {3, 1}}));
        REQUIRE(FS.sub_basis == std::vector<uint32_t>{0, 3, 6});
    }
    SECTION("U3 twisted generators are grouplike-free cubes") {
        auto FS = frobenius_sub(gs(Family::Unitriangular, 3, 3, 1));
        REQUIRE(FS.ambient.A.dim == 729);
        // y13 = x13^3 at ambient index 27; Delta(y13) = y13.1 + y12.y23 + 1.y13
        REQUIRE(spv_equal(FS.gens[1], SpVec{{27, 1}}));
        REQUIRE(spv_equal(FS.ambient.co->comult(27), SpVec{{27, 1}, {2430, 1}, {19683, 1}}));
    }
    SECTION("twisted subalgebra is invariant under the height-1 adjoint action") {
        for (auto s : {gs(Family::Unitriangular, 3, 3, 1), gs(Family::BorelGL2, 0, 3, 1)}) {
            auto FS = frobenius_sub(s);
            GroupSchemeSpec up = s;
            up.r = s.r + 1;
            auto rho = adjoint_coaction(up);
            const MonCoords& acs = FS.ambient_cs;
            const uint32_t dR = FS.low_cs.dim();
            const Fp F(s.p);
            // project the second leg along O(G_{r+1}) ->> O(G_r)
            auto pi = [&](uint32_t b) -> std::optional<uint32_t> {
                auto e = acs.exps(b);
                std::vector<uint32_t> lo(e.size());
                for (size_t c = 0; c < e.size(); ++c) {
                    if (!acs.wrap[c] && e[c] >= FS.qr) return std::nullopt;
                    lo[c] = e[c] % FS.qr;
                }
                return FS.low_cs.index(lo);
            };
            for (auto& y : FS.gens) {
                SpVec lhs, expect;
                for (auto& [i, c] : y) {
                    for (auto& [ab, cc] : rho->comult(i)) {
                        auto img = pi(ab % FS.ambient.A.dim);
                        if (img) lhs.emplace_back((ab / FS.ambient.A.dim) * dR + *img, F.mul(c, cc));
                    }
                    expect.emplace_back(i * dR + 0, c);
                }
                spv_normalize(lhs, F);
                spv_normalize(expect, F);
                INFO(spec_label(s));
                REQUIRE(spv_equal(lhs, expect));
            }
        }
    }
}
