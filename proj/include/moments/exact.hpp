// exact.hpp -- exact scalar types and 64-bit modular arithmetic primitives.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace moments {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;  // p < 2^63 keeps this overflow-free
    return s >= p ? s - p : s;
}

inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 powmod(u64 base, u64 exp, u64 p) {
    u64 r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// The first `count` primes scanning downward from `start` (inclusive).
inline std::vector<u64> descending_primes(u64 start, int count) {
    std::vector<u64> out;
    for (u64 n = start | 1; static_cast<int>(out.size()) < count; n -= 2) {
        if (is_prime(n)) out.push_back(n);
        if (n < 3) throw std::runtime_error("prime scan underflow");
    }
    return out;
}

/// Fixed residue moduli for CRT determinants: the largest primes below 2^62.
inline const std::vector<u64>& crt_prime_pool() {
    static const std::vector<u64> pool = descending_primes((u64(1) << 62) - 1, 96);
    return pool;
}

/// Montgomery arithmetic for an odd modulus p < 2^63.  Entries are kept in
/// the plain residue domain; `mul_plain_by` premultiplies one factor by R so
/// a single REDC per product stays in the plain domain.
class Montgomery {
public:
    explicit Montgomery(u64 p) : p_(p) {
        if (p < 3 || (p & 1) == 0 || p >= (u64(1) << 63))
            throw std::invalid_argument("modulus must be odd, 3 <= p < 2^63");
        u64 inv = p;  // Newton iteration for p^{-1} mod 2^64
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        npinv_ = ~inv + 1;  // -p^{-1} mod 2^64
        u64 r = static_cast<u64>((u128(1) << 64) % p);
        r2_ = mulmod(r, r, p);
    }

    u64 modulus() const { return p_; }

    /// x * R mod p; feed the result to redc_mul to multiply plain residues.
    u64 to_mont(u64 x) const { return redc(u128(x) * r2_); }

    /// redc_mul(to_mont(a), b) == a*b mod p, with b and the result plain.
    u64 redc_mul(u64 a_mont, u64 b_plain) const { return redc(u128(a_mont) * b_plain); }

    u64 inverse(u64 x) const { return powmod(x, p_ - 2, p_); }

private:
    u64 redc(u128 t) const {
        u64 m = static_cast<u64>(t) * npinv_;
        u64 r = static_cast<u64>((t + u128(m) * p_) >> 64);
        return r >= p_ ? r - p_ : r;
    }

    u64 p_;
    u64 npinv_;
    u64 r2_;
};

/// Montgomery arithmetic over 32-bit residues for odd p < 2^31.  All
/// products fit native 64-bit registers, which roughly halves both the
/// arithmetic and the memory traffic of the 64-bit variant; used by the
/// finite-field rank kernel where matrices reach order 6435.
class Montgomery32 {
public:
    using u32 = std::uint32_t;

    explicit Montgomery32(u64 p) : p_(static_cast<u32>(p)) {
        if (p < 3 || (p & 1) == 0 || p >= (u64(1) << 31))
            throw std::invalid_argument("modulus must be odd, 3 <= p < 2^31");
        u32 inv = p_;
        for (int i = 0; i < 5; ++i) inv *= 2 - p_ * inv;
        npinv_ = ~inv + 1;
        u32 r = static_cast<u32>((u64(1) << 32) % p_);
        r2_ = static_cast<u32>(u64(r) * r % p_);
    }

    u32 modulus() const { return p_; }
    u32 to_mont(u32 x) const { return redc(u64(x) * r2_); }
    u32 redc_mul(u32 a_mont, u32 b_plain) const { return redc(u64(a_mont) * b_plain); }

    u32 sub(u32 a, u32 b) const {
        u32 d = a - b;
        return d + (p_ & (0u - u32(a < b)));
    }

    u32 inverse(u32 x) const { return static_cast<u32>(powmod(x, p_ - 2, p_)); }

private:
    u32 redc(u64 t) const {
        u32 m = static_cast<u32>(t) * npinv_;
        u64 r = (t + u64(m) * p_) >> 32;
        u32 r32 = static_cast<u32>(r);
        return r32 - (p_ & (0u - u32(r32 >= p_)));
    }

    u32 p_;
    u32 npinv_;
    u32 r2_;
};

/// log10 |v|, or -infinity for zero.  Exact to ~1e-15 relative, any size.
inline double log10_abs(const BigInt& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    BigInt a = abs(v);
    unsigned bits = msb(a);  // floor(log2 a)
    if (bits <= 52) return std::log10(static_cast<double>(static_cast<u64>(a)));
    u64 top = static_cast<u64>(a >> (bits - 52));
    return std::log10(static_cast<double>(top)) + (bits - 52) * 0.30102999566398119521;
}

}  // namespace moments
