#include "galrep3/quadint.hpp"

#include <limits>

namespace galrep3 {

namespace {

constexpr u128 U128_MAX = ~(u128)0;

u128 uabs(i128 v) { return v < 0 ? (u128)(-v) : (u128)v; }

u128 checked_sq(u128 v) {
    if (v >> 63) throw overflow_error("QuadInt::norm: coordinate too large");
    return v * v;
}

}  // namespace

u128 QuadInt::norm() const {
    u128 a = checked_sq(uabs(x));
    u128 t = checked_sq(uabs(y));
    if (t != 0 && (u128)D > U128_MAX / t) throw overflow_error("QuadInt::norm: overflow");
    u128 b = (u128)D * t;
    if (b > U128_MAX - a) throw overflow_error("QuadInt::norm: overflow");
    return a + b;
}

u64 QuadInt::norm64() const {
    u128 n = norm();
    if (n > ((u128)1 << 63)) throw overflow_error("QuadInt::norm64: norm exceeds 2^63");
    return (u64)n;
}

QuadInt QuadInt::operator+(const QuadInt& o) const { return {x + o.x, y + o.y, D}; }
QuadInt QuadInt::operator-(const QuadInt& o) const { return {x - o.x, y - o.y, D}; }

QuadInt QuadInt::operator*(const QuadInt& o) const {
    // (x1 + y1 s)(x2 + y2 s) with s^2 = -D
    return {x * o.x - (i128)D * y * o.y, x * o.y + y * o.x, D};
}

std::string QuadInt::str() const {
    auto i128_str = [](i128 v) {
        if (v == 0) return std::string("0");
        bool neg = v < 0;
        u128 u = neg ? (u128)(-v) : (u128)v;
        std::string s;
        while (u) {
            s.insert(s.begin(), char('0' + (int)(u % 10)));
            u /= 10;
        }
        return neg ? "-" + s : s;
    };
    std::string s = i128_str(x);
    if (y != 0) {
        s += (y > 0 ? "+" : "-") + i128_str(y < 0 ? -y : y);
        s += (D == 1) ? "i" : ("*sqrt(-" + std::to_string(D) + ")");
    }
    return s;
}

SplittingType splitting(u64 D, u64 ell) {
    if (ell == 2) throw std::invalid_argument("splitting: ell must be odd");
    if (D % ell == 0) return SplittingType::Ramified;
    i64 md = -(i64)(D % ell);
    return legendre(md, ell) == 1 ? SplittingType::Split : SplittingType::Inert;
}

const char* splitting_name(SplittingType s) {
    switch (s) {
        case SplittingType::Split: return "split";
        case SplittingType::Inert: return "inert";
        default: return "ramified";
    }
}

}  // namespace galrep3
