#include "galrep3/intutil.hpp"

#include <algorithm>

namespace galrep3 {

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

namespace {

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite odd n.
u64 brent_rho(u64 n, u64 c) {
    u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const u64 m = 128;
    do {
        x = y;
        for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
        for (u64 k = 0; k < r && g == 1; k += m) {
            ys = y;
            u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = (mulmod(y, y, n) + c) % n;
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = gcd_u64(q, n);
        }
        r <<= 1;
    } while (g == 1);
    if (g == n) {
        do {
            ys = (mulmod(ys, ys, n) + c) % n;
            g = gcd_u64(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = n;
    for (u64 c = 1; d == n; ++c) d = brent_rho(n, c);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

int legendre(i64 a, u64 p) {
    i64 r = a % (i64)p;
    if (r < 0) r += (i64)p;
    if (r == 0) return 0;
    u64 e = powmod((u64)r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

u64 Factorization::recompose() const {
    u128 v = 1;
    for (auto [p, e] : factors)
        for (unsigned i = 0; i < e; ++i) v *= p;
    return (u64)v;
}

Factorization factor(u64 n) {
    if (n == 0 || n > (u64(1) << 63))
        throw std::invalid_argument("factor: input out of range");
    Factorization f;
    f.input = n;
    std::vector<u64> primes;
    // strip small factors first; rho handles the remaining hard part
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
        if (!f.factors.empty() && f.factors.back().first == p)
            ++f.factors.back().second;
        else
            f.factors.push_back({p, 1});
    }
    return f;
}

std::vector<u64> prime_radical(u64 n) {
    std::vector<u64> out;
    for (auto [p, e] : factor(n).factors) out.push_back(p);
    return out;
}

i64 sqrt_mod(i64 a, u64 p) {
    i64 r = a % (i64)p;
    if (r < 0) r += (i64)p;
    if (r == 0) return 0;
    if (legendre(r, p) != 1) return -1;
    if (p == 2) return r;
    // Tonelli-Shanks
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 root;
    if (s == 1) {
        root = powmod((u64)r, (p + 1) / 4, p);
    } else {
        u64 z = 2;
        while (legendre((i64)z, p) != -1) ++z;
        u64 m = (u64)s;
        u64 c = powmod(z, q, p);
        u64 t = powmod((u64)r, q, p);
        root = powmod((u64)r, (q + 1) / 2, p);
        while (t != 1) {
            u64 t2 = t;
            u64 i = 0;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, p);
                ++i;
            }
            u64 b = c;
            for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            root = mulmod(root, b, p);
        }
    }
    return (i64)std::min(root, p - root);
}

}  // namespace galrep3
