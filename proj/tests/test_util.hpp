#pragma once

// Handmade Hopf-algebra oracles shared across the test binaries.  These are
// built entry by entry from textbook formulas, independent of the library's
// constructors, so agreement is meaningful.

#include <memory>
#include <string>

#include "frobdouble/hopf.hpp"

namespace frdtest {

// k[t]/t^q with the additive group law.
inline frd::HopfAlgebra truncated_additive(uint32_t p, uint32_t q) {
    using namespace frd;
    Fp F(p);
    HopfAlgebra H;
    H.A.F = F;
    H.A.dim = q;
    H.A.unit = {{0, 1}};
    auto mul = std::make_shared<TableMul>(q);
    for (uint32_t i = 0; i < q; ++i)
        for (uint32_t j = 0; j < q; ++j)
            if (i + j < q) mul->at(i, j) = {{i + j, 1}};
    H.A.mul = mul;
    Vec aug(q, 0);
    aug[0] = 1;
    H.A.aug = aug;
    auto co = std::make_shared<TableComult>();
    co->rows.resize(q);
    for (uint32_t n = 0; n < q; ++n)
        for (uint32_t k = 0; k <= n; ++k) {
            uint32_t c = binom_mod_p(F, n, k);
            if (c) co->rows[n].emplace_back(k * q + (n - k), c);
        }
    H.co = co;
    auto ant = std::make_shared<TableLinMap>();
    ant->rows.resize(q);
    for (uint32_t i = 0; i < q; ++i) ant->rows[i] = {{i, (i % 2) ? F.neg(1) : 1u}};
    H.ant = ant;
    for (uint32_t i = 0; i < q; ++i) H.A.labels.push_back("t^" + std::to_string(i));
    return H;
}

// Group algebra of Z/n over F_p, grouplike generator.
inline frd::HopfAlgebra cyclic_group_algebra(uint32_t p, uint32_t n) {
    using namespace frd;
    Fp F(p);
    HopfAlgebra H;
    H.A.F = F;
    H.A.dim = n;
    H.A.unit = {{0, 1}};
    auto mul = std::make_shared<TableMul>(n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) mul->at(i, j) = {{(i + j) % n, 1}};
    H.A.mul = mul;
    H.A.aug = Vec(n, 1);
    auto co = std::make_shared<TableComult>();
    co->rows.resize(n);
    for (uint32_t i = 0; i < n; ++i) co->rows[i] = {{i * n + i, 1}};
    H.co = co;
    auto ant = std::make_shared<TableLinMap>();
    ant->rows.resize(n);
    for (uint32_t i = 0; i < n; ++i) ant->rows[i] = {{(n - i) % n, 1}};
    H.ant = ant;
    return H;
}

inline std::string failure_summary(const frd::AxiomReport& rep) {
    std::string s;
    for (auto& c : rep.checks)
        if (!c.pass) s += c.name + "@" + c.counterexample + "; ";
    return s;
}

}  // namespace frdtest
