#include <doctest.h>

#include "galrep3/quadint.hpp"

using namespace galrep3;

TEST_CASE("norm and conjugation") {
    QuadInt a{1, 2, 1};  // 1 + 2i
    CHECK(a.norm() == 5);
    CHECK(a.norm64() == 5);
    CHECK((a * a.conj()).x == 5);
    CHECK((a * a.conj()).y == 0);
    QuadInt b{-1, 1, 7};  // -1 + sqrt(-7)
    CHECK(b.norm() == 8);
    QuadInt c{161, -16, 1};
    CHECK(c.norm() == 161 * 161 + 16 * 16);
}

TEST_CASE("ring operations") {
    QuadInt a{3, -2, 5}, b{-1, 4, 5};
    QuadInt s = a + b;
    CHECK(s == QuadInt{2, 2, 5});
    QuadInt p = a * b;
    // (3 - 2w)(-1 + 4w) with w^2 = -5: -3 + 12w + 2w - 8w^2 = 37 + 14w
    CHECK(p == QuadInt{37, 14, 5});
    CHECK((a - a).is_zero());
    CHECK((-a) + a == QuadInt{0, 0, 5});
    CHECK(a.conj().conj() == a);
    // norm is multiplicative
    CHECK((a * b).norm() == a.norm() * b.norm());
}

TEST_CASE("cube matches repeated multiplication") {
    QuadInt a{1, 2, 1};
    CHECK(a.cube() == a * a * a);
    // (1+2i)^3 = 1 + 6i - 12 - 8i = -11 - 2i
    CHECK(a.cube() == QuadInt{-11, -2, 1});
    QuadInt b{-1, 1, 7};
    // (-1+w)^3 with w^2=-7: -1 + 3w - 3w^2 + w^3 = (-1+21) + (3-7)w = 20 - 4w
    CHECK(b.cube() == QuadInt{20, -4, 7});
    CHECK((b.cube() - b.conj().cube()) == QuadInt{0, -8, 7});
    CHECK((b.cube() - b.conj().cube()).norm() == 448);
}

TEST_CASE("norm overflow is detected") {
    QuadInt big{(i128)1 << 70, 0, 1};
    CHECK_THROWS_AS(big.norm(), overflow_error);
    QuadInt just_too_big{(i128)1 << 32, 0, 1};
    CHECK_THROWS_AS(just_too_big.norm64(), overflow_error);
}

TEST_CASE("splitting in Q(sqrt(-D))") {
    // D = 1: split iff ell = 1 (mod 4)
    CHECK(splitting(1, 5) == SplittingType::Split);
    CHECK(splitting(1, 13) == SplittingType::Split);
    CHECK(splitting(1, 7) == SplittingType::Inert);
    CHECK(splitting(1, 11) == SplittingType::Inert);
    CHECK(splitting(1, 19) == SplittingType::Inert);
    // D = 7
    CHECK(splitting(7, 7) == SplittingType::Ramified);
    CHECK(splitting(7, 11) == SplittingType::Split);
    CHECK(splitting(7, 5) == SplittingType::Inert);
    CHECK(splitting(7, 13) == SplittingType::Inert);
    CHECK(splitting(7, 19) == SplittingType::Inert);
    CHECK(splitting(7, 17) == SplittingType::Inert);
    // cross-check against the Legendre symbol for many primes
    for (u64 ell = 3; ell < 200; ++ell) {
        if (!is_prime(ell)) continue;
        for (u64 D : {1ull, 2ull, 7ull, 11ull}) {
            SplittingType st = splitting(D, ell);
            if (D % ell == 0)
                CHECK(st == SplittingType::Ramified);
            else
                CHECK(st == (legendre(-(i64)D, ell) == 1 ? SplittingType::Split
                                                         : SplittingType::Inert));
        }
    }
    CHECK_THROWS(splitting(1, 2));
}
