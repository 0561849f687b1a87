#pragma once

#include "galrep3/intutil.hpp"

#include <set>

namespace galrep3 {

// Double covers t^2 = x y (x^2 - 1)(y^2 - 1)(x^2 - y^2 + a x y), a != 0.
struct SurfaceParams {
    i64 a;
};

// Prime radical of |2a(a^2 + 4)|: the primes of bad reduction.
std::set<u64> surface_bad_primes(i64 a);

struct AffineCount {
    u64 count = 0;      // points (x, y, t) over F_p
    i64 char_sum = 0;   // sum of legendre(f(x, y)) over the plane
    bool bad = false;   // p divides 2a(a^2 + 4)
};

// Exact affine point count N = p^2 + sum of quadratic characters of the
// sextic; Legendre symbols come from a per-p table of squares.
AffineCount count_affine(i64 a, u64 p);

// f(x, y) mod p, reduced to [0, p)
u64 surface_poly_eval(i64 a, u64 p, u64 x, u64 y);

}  // namespace galrep3
