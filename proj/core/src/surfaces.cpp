#include "galrep3/surfaces.hpp"

#include <stdexcept>
#include <vector>

namespace galrep3 {

std::set<u64> surface_bad_primes(i64 a) {
    if (a == 0) throw std::invalid_argument("surface parameter a must be nonzero");
    i128 n = (i128)2 * a * ((i128)a * a + 4);
    if (n < 0) n = -n;
    std::set<u64> out;
    for (u64 p : prime_radical((u64)n)) out.insert(p);
    return out;
}

u64 surface_poly_eval(i64 a, u64 p, u64 x, u64 y) {
    u64 am = (u64)(((a % (i64)p) + (i64)p) % (i64)p);
    u64 x2 = mulmod(x, x, p), y2 = mulmod(y, y, p);
    u64 f = mulmod(x, y, p);
    f = mulmod(f, (x2 + p - 1) % p, p);
    f = mulmod(f, (y2 + p - 1) % p, p);
    u64 quad = (x2 + p - y2 % p + mulmod(am, mulmod(x, y, p), p)) % p;
    f = mulmod(f, quad, p);
    return f;
}

AffineCount count_affine(i64 a, u64 p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("count_affine: need an odd prime");
    AffineCount res;
    i128 disc = (i128)2 * a * ((i128)a * a + 4);
    if (disc < 0) disc = -disc;
    res.bad = (u64)(disc % (i128)p) == 0;
    // chi[v]: 1 for nonzero squares, -1 otherwise, 0 at v = 0
    std::vector<int> chi(p, -1);
    chi[0] = 0;
    for (u64 v = 1; v < p; ++v) chi[mulmod(v, v, p)] = 1;
    i64 sum = 0;
    for (u64 x = 0; x < p; ++x)
        for (u64 y = 0; y < p; ++y) sum += chi[surface_poly_eval(a, p, x, y)];
    res.char_sum = sum;
    res.count = (u64)((i64)(p * p) + sum);
    return res;
}

}  // namespace galrep3
