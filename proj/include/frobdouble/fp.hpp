#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace frd {

struct FrdError : std::runtime_error {
    explicit FrdError(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Arithmetic context for the prime field F_p.  Values are stored reduced,
/// 0 <= v < p.  p must fit in a byte so dense row buffers can use uint8_t.
class Fp {
public:
    Fp() = default;
    explicit Fp(uint32_t p) : p_(p) {
        if (!is_prime_u32(p)) throw FrdError("Fp: modulus " + std::to_string(p) + " is not prime");
        if (p >= 256) throw FrdError("Fp: modulus too large (desk scale requires p < 256)");
        inv_.assign(p_, 0);
        for (uint32_t a = 1; a < p_; ++a) inv_[a] = pow(a, p_ - 2);
    }

    uint32_t p() const { return p_; }

    uint32_t reduce64(uint64_t x) const { return static_cast<uint32_t>(x % p_); }
    uint32_t add(uint32_t a, uint32_t b) const { uint32_t s = a + b; return s >= p_ ? s - p_ : s; }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const { return (a * b) % p_; }
    uint32_t inv(uint32_t a) const {
        if (a == 0) throw FrdError("Fp: division by zero");
        return inv_[a % p_];
    }

    uint32_t pow(uint32_t a, uint64_t e) const {
        uint64_t base = a % p_, acc = 1;
        while (e) {
            if (e & 1) acc = (acc * base) % p_;
            base = (base * base) % p_;
            e >>= 1;
        }
        return static_cast<uint32_t>(acc);
    }

    /// Reduce an integer (possibly negative) into [0, p).
    uint32_t from_int(int64_t v) const {
        int64_t r = v % static_cast<int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<uint32_t>(r);
    }

private:
    uint32_t p_ = 0;
    std::vector<uint32_t> inv_;
};

/// Binomial coefficient mod p via Lucas' theorem; exponents here stay tiny
/// but Lucas keeps it exact for any inputs.
inline uint32_t binom_mod_p(const Fp& F, uint64_t n, uint64_t k) {
    if (k > n) return 0;
    uint32_t p = F.p();
    uint32_t result = 1;
    while (n > 0 || k > 0) {
        uint64_t ni = n % p, ki = k % p;
        if (ki > ni) return 0;
        // small factorial-based binomial for digits < p
        uint64_t num = 1, den = 1;
        for (uint64_t i = 0; i < ki; ++i) {
            num = (num * ((ni - i) % p)) % p;
            den = (den * ((i + 1) % p)) % p;
        }
        result = F.mul(result, F.mul(static_cast<uint32_t>(num), F.inv(static_cast<uint32_t>(den % p))));
        n /= p;
        k /= p;
    }
    return result;
}

inline uint32_t multinomial_mod_p(const Fp& F, const std::vector<uint64_t>& parts) {
    uint64_t total = 0;
    uint32_t acc = 1;
    for (uint64_t c : parts) {
        total += c;
        acc = F.mul(acc, binom_mod_p(F, total, c));
    }
    return acc;
}

}  // namespace frd
