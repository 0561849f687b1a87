#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace galrep3 {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

struct overflow_error : std::runtime_error {
    explicit overflow_error(const char* what) : std::runtime_error(what) {}
};

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b);

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime(u64 n);

// Legendre symbol (a|p), p an odd prime.
int legendre(i64 a, u64 p);

struct Factorization {
    u64 input = 1;
    std::vector<std::pair<u64, unsigned>> factors;  // (prime, exponent), ascending

    u64 recompose() const;
};

// Complete factorization via trial division + Brent-cycle rho. n >= 1, n <= 2^63.
Factorization factor(u64 n);

// Distinct prime divisors of n, ascending.
std::vector<u64> prime_radical(u64 n);

// Smallest nonnegative square root of a mod p, or -1 if a is a nonresidue.
i64 sqrt_mod(i64 a, u64 p);

}  // namespace galrep3
