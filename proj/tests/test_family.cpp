#include <doctest.h>

#include "galrep3/family.hpp"

#include <sstream>

using namespace galrep3;

namespace {
const std::string kDataDir = GALREP3_DATA_DIR;
}

TEST_CASE("shipped fixtures parse with the documented contents") {
    EigenTable s2 = parse_table_file(kDataDir + "/s2.tbl");
    CHECK(s2.descriptor.label == "s2");
    CHECK(s2.descriptor.D == 1);
    CHECK(s2.descriptor.level == 0);
    CHECK(s2.descriptor.bad_primes == std::set<u64>{2});
    CHECK(s2.descriptor.mode == ConductorMode::Geometric);
    CHECK(s2.descriptor.epsilon_conductor_bound == 128);
    REQUIRE(s2.descriptor.excluded_congruences.size() == 2);
    CHECK(s2.descriptor.excluded_congruences[0] == std::pair<u64, u64>{64, 1});
    CHECK(s2.descriptor.excluded_congruences[1] == std::pair<u64, u64>{32, 31});
    REQUIRE(s2.entries.size() == 3);
    CHECK(s2.at(3) == QuadInt{1, 2, 1});
    CHECK(s2.at(5) == QuadInt{-1, -4, 1});
    CHECK(s2.at(127) == QuadInt{161, -16, 1});

    EigenTable l88 = parse_table_file(kDataDir + "/level88.tbl");
    CHECK(l88.descriptor.D == 7);
    CHECK(l88.descriptor.level == 88);
    CHECK(l88.descriptor.mode == ConductorMode::Modular);
    CHECK(l88.at(3) == QuadInt{-1, 1, 7});
    CHECK(l88.at(89) == QuadInt{-60, -4, 7});
    CHECK(l88.descriptor.n_prime() == 22);
    CHECK(l88.descriptor.quadratic_modulus() == 88);

    EigenTable l53 = parse_table_file(kDataDir + "/level53.tbl");
    CHECK(l53.descriptor.D == 11);
    CHECK(l53.descriptor.level == 53);
    CHECK(l53.entries.empty());
}

TEST_CASE("serialize/parse round trip") {
    EigenTable s2 = parse_table_file(kDataDir + "/s2.tbl");
    std::string text = serialize_table(s2);
    std::istringstream in(text);
    EigenTable again = parse_table(in);
    CHECK(serialize_table(again) == text);
    CHECK(again.entries == s2.entries);
    CHECK(again.descriptor.label == s2.descriptor.label);
}

TEST_CASE("parser rejects malformed input") {
    auto parse_str = [](const std::string& s) {
        std::istringstream in(s);
        return parse_table(in);
    };
    CHECK_THROWS_AS(parse_str("family x\nfield-D 1\n"), parse_error);  // missing mode
    CHECK_THROWS_AS(parse_str("mode modular\nlevel 0\n"), std::exception);  // modular, no level
    CHECK_THROWS_AS(parse_str("field-D 1\nmode geometric 4\nap 4 1 1\n"), parse_error);  // 4 not prime
    CHECK_THROWS_AS(parse_str("field-D 1\nmode geometric 4\nap 3 1 1\nap 3 1 1\n"), parse_error);
    CHECK_THROWS_AS(parse_str("field-D 1\nlevel 6\nmode modular\nap 3 1 1\n"), parse_error);  // 3 | N
    CHECK_THROWS_AS(parse_str("field-D 1\nbad 3\nmode geometric 4\nap 3 1 1\n"), parse_error);
    CHECK_THROWS_AS(parse_str("field-D 12\nmode geometric 4\n"), std::exception);  // not squarefree
    // Ramanujan bound: norm(a_3) <= 81
    CHECK_THROWS_AS(parse_str("field-D 1\nmode geometric 4\nap 3 10 0\n"), parse_error);
    CHECK_NOTHROW(parse_str("field-D 1\nmode geometric 4\nap 3 9 0\n"));
    CHECK_THROWS_AS(parse_str("field-D 1\nmode geometric 4\nbogus 1\n"), parse_error);
}

TEST_CASE("characteristic polynomial data") {
    FrobCharPoly f = charpoly(3, QuadInt{1, 2, 1});
    CHECK(f.p == 3);
    CHECK(f.middle == QuadInt{3, -6, 1});  // 3 * (1 - 2i)
    CHECK((i64)f.constant == -27);
}

TEST_CASE("residual charpoly x^3 + x + 3 at (p=3, a=1+2i, ell=5)") {
    FqPoly f = residual_charpoly(3, QuadInt{1, 2, 1}, 5);
    const FqField* F5 = f.field;
    REQUIRE(F5->k() == 1);
    // -a = -(1+2i): i reduces to 2 or 3 mod 5; smallest root of -1 is 2
    // a = 1 + 2*2 = 5 = 0, so the x^2 coefficient vanishes
    CHECK(f.c[3].is_one());
    CHECK(f.c[2].is_zero());
    // p*conj(a) = 3*(1-2i) -> 3*(1-4) = -9 = 1 (mod 5)
    CHECK(f.c[1] == F5->from_int(1));
    CHECK(f.c[0] == F5->from_int(-27));
    CHECK(f.c[0] == F5->from_int(3));
    // root 1: 1 + 0 + 1 + 3 = 5 = 0
    CHECK(f.eval(F5->one()).is_zero());
}

TEST_CASE("residual charpoly lands in F_{ell^2} for inert ell") {
    FqPoly f = residual_charpoly(3, QuadInt{1, 2, 1}, 7);
    CHECK(f.field->k() == 2);
    CHECK_THROWS(residual_charpoly(3, QuadInt{1, 2, 1}, 2));
    CHECK_THROWS(residual_charpoly(3, QuadInt{1, 2, 1}, 3));
    CHECK_THROWS(residual_charpoly(3, QuadInt{-1, 1, 7}, 7));  // ramified
}
