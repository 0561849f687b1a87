#pragma once

#include "galrep3/intutil.hpp"

#include <string>

namespace galrep3 {

// x + y*sqrt(-D), D > 0 squarefree. Coordinates are 128-bit so that the
// intermediate sieve values (up to ~p^3 * |a_p|) never wrap; norms are
// checked against 2^63.
struct QuadInt {
    i128 x = 0;
    i128 y = 0;
    u64 D = 1;

    QuadInt() = default;
    QuadInt(i128 x_, i128 y_, u64 D_) : x(x_), y(y_), D(D_) {}

    QuadInt conj() const { return {x, -y, D}; }

    bool is_zero() const { return x == 0 && y == 0; }
    bool is_real() const { return y == 0; }

    // x^2 + D*y^2; throws overflow_error beyond 128-bit range.
    u128 norm() const;

    // norm, required to fit in 63 bits (sieve arithmetic contract)
    u64 norm64() const;

    QuadInt operator+(const QuadInt& o) const;
    QuadInt operator-(const QuadInt& o) const;
    QuadInt operator*(const QuadInt& o) const;
    QuadInt operator-() const { return {-x, -y, D}; }
    bool operator==(const QuadInt& o) const { return x == o.x && y == o.y && D == o.D; }

    QuadInt cube() const { return *this * *this * *this; }

    std::string str() const;
};

inline QuadInt operator*(i128 k, const QuadInt& q) { return QuadInt{q.x, q.y, q.D} * QuadInt{k, 0, q.D}; }

enum class SplittingType { Split, Inert, Ramified };

// Behavior of odd prime ell in Q(sqrt(-D)).
SplittingType splitting(u64 D, u64 ell);

const char* splitting_name(SplittingType s);

}  // namespace galrep3
