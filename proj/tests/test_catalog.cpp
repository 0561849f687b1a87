#include <doctest.h>

#include "galrep3/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

using namespace galrep3;

TEST_CASE("case names round-trip") {
    for (MitchellCase c : {MitchellCase::A, MitchellCase::C, MitchellCase::D, MitchellCase::E,
                           MitchellCase::F, MitchellCase::G, MitchellCase::H216, MitchellCase::H72,
                           MitchellCase::H36, MitchellCase::I, MitchellCase::J, MitchellCase::X2A6,
                           MitchellCase::XA7}) {
        auto back = case_from_name(case_name(c));
        REQUIRE(back.has_value());
        CHECK(*back == c);
    }
    CHECK(!case_from_name("nonsense").has_value());
    CHECK(case_is_exceptional(MitchellCase::H216));
    CHECK(case_is_exceptional(MitchellCase::I));
    CHECK(case_is_exceptional(MitchellCase::XA7));
    CHECK(!case_is_exceptional(MitchellCase::A));
    CHECK(!case_is_exceptional(MitchellCase::E));
}

TEST_CASE("group orders at hand-computed values") {
    // stabilizer of a point pair: (q+1) q^3 (q-1)^2 / gcd(3, q-1), q = 5
    CHECK(case_order(MitchellCase::A, 5, 1) == (u128)6 * 125 * 16);
    // imprimitive monomial case: 6 (q-1)^2 / gcd(3, q-1)
    CHECK(case_order(MitchellCase::C, 5, 1) == 96);
    CHECK(case_order(MitchellCase::C, 7, 1) == 6 * 36 / 3);
    // cubic-CM normalizer: 3 (q^2+q+1) / gcd(3, q-1)
    CHECK(case_order(MitchellCase::D, 5, 1) == 93);
    // conic stabilizer PGL(2, q): (q+1) q (q-1)
    CHECK(case_order(MitchellCase::E, 5, 1) == 120);
    // full PSL(3, 5)
    CHECK(case_order(MitchellCase::F, 5, 1, 1) == 372000);
    // unitary case PSU(3, 7) inside PSL(3, 49)
    CHECK(case_order(MitchellCase::G, 7, 2) == 5663616);
    // constant-order exceptional cases
    CHECK(case_order(MitchellCase::H216, 19, 1) == 216);
    CHECK(case_order(MitchellCase::H72, 5, 2) == 72);
    CHECK(case_order(MitchellCase::H36, 7, 1) == 36);
    CHECK(case_order(MitchellCase::I, 13, 1) == 168);
    CHECK(case_order(MitchellCase::J, 19, 1) == 360);
    CHECK(case_order(MitchellCase::X2A6, 5, 2) == 720);
    CHECK(case_order(MitchellCase::XA7, 5, 2) == 2520);
    // the two point-pair stabilizer flavours have equal order
    for (u64 ell : {5ull, 7ull, 11ull, 13ull, 97ull})
        for (int t : {1, 2})
            CHECK(case_order(MitchellCase::A, ell, t) == case_order(MitchellCase::B, ell, t));
    // case F validates k, case G needs t = 2
    CHECK_THROWS(case_order(MitchellCase::F, 5, 1, 2));
    CHECK_THROWS(case_order(MitchellCase::G, 7, 1));
}

TEST_CASE("existence side conditions") {
    CHECK(case_exists(MitchellCase::H216, 19, 1));   // 19 = 1 (mod 9)
    CHECK(!case_exists(MitchellCase::H216, 17, 1));  // 17 = 8 (mod 9)
    CHECK(case_exists(MitchellCase::H216, 17, 2));   // 289 = 1 (mod 9)
    CHECK(case_exists(MitchellCase::H72, 7, 1));     // 7 = 7 (mod 9)
    CHECK(case_exists(MitchellCase::H36, 13, 1));    // 13 = 4 (mod 9)
    CHECK(!case_exists(MitchellCase::I, 13, 1));     // 13 mod 7 = 6
    CHECK(case_exists(MitchellCase::I, 11, 1));      // 11 mod 7 = 4
    CHECK(case_exists(MitchellCase::I, 2, 1));       // 2 mod 7 = 2
    CHECK(!case_exists(MitchellCase::I, 5, 1));      // 5 mod 7 = 5
    CHECK(case_exists(MitchellCase::I, 5, 2));       // t = 2: always
    CHECK(case_exists(MitchellCase::J, 19, 1));      // 19 mod 15 = 4
    CHECK(!case_exists(MitchellCase::J, 7, 1));      // 7 mod 15 = 7
    CHECK(case_exists(MitchellCase::J, 7, 2));
    CHECK(case_exists(MitchellCase::X2A6, 5, 2));
    CHECK(!case_exists(MitchellCase::X2A6, 5, 1));
    CHECK(!case_exists(MitchellCase::XA7, 7, 2));
    CHECK(case_exists(MitchellCase::G, 11, 2));
    CHECK(!case_exists(MitchellCase::G, 11, 1));
}

TEST_CASE("every existing subgroup order divides the ambient simple group order") {
    for (auto [ell, t] : std::vector<std::pair<u64, int>>{
             {5, 1}, {7, 1}, {11, 1}, {13, 1}, {19, 1}, {5, 2}, {7, 2}, {11, 2}, {17, 2}}) {
        u128 ambient = case_order(MitchellCase::F, ell, t, t);
        for (MitchellCase c : {MitchellCase::A, MitchellCase::B, MitchellCase::C, MitchellCase::D,
                               MitchellCase::E, MitchellCase::G, MitchellCase::H216,
                               MitchellCase::H72, MitchellCase::H36, MitchellCase::I,
                               MitchellCase::J, MitchellCase::X2A6, MitchellCase::XA7}) {
            if (!case_exists(c, ell, t)) continue;
            CHECK(ambient % case_order(c, ell, t) == 0);
        }
        for (int k = 1; k <= t; ++k) CHECK(ambient % case_order(MitchellCase::F, ell, t, k) == 0);
    }
}

TEST_CASE("inertia patterns and the weight filter") {
    auto all = inertia_patterns(3);
    auto filtered = inertia_patterns(2);
    CHECK(all.size() == 6);
    CHECK(filtered.size() == 5);
    // the removed pattern is the scalar one with weight multiset {1,1,1}
    std::set<int> filtered_ids, all_ids;
    for (const auto& p : filtered) filtered_ids.insert(p.id);
    for (const auto& p : all) all_ids.insert(p.id);
    std::vector<int> removed;
    std::set_difference(all_ids.begin(), all_ids.end(), filtered_ids.begin(), filtered_ids.end(),
                        std::back_inserter(removed));
    REQUIRE(removed.size() == 1);
    for (const auto& p : all)
        if (p.id == removed[0]) {
            CHECK(p.weights == std::array<int, 3>{1, 1, 1});
            CHECK(p.projective_cyclic_order(19) == 1);
        }
    // surviving patterns all have weight multiset {0,1,2}
    for (const auto& p : filtered) {
        std::array<int, 3> w = p.weights;
        std::sort(w.begin(), w.end());
        CHECK(w == std::array<int, 3>{0, 1, 2});
    }
    // projectivized orders land in {ell-1, ell+1, ell^2+ell+1}
    for (u64 ell : {5ull, 13ull, 19ull}) {
        std::set<u64> allowed = projective_inertia_orders(ell);
        CHECK(allowed == std::set<u64>{ell - 1, ell + 1, ell * ell + ell + 1});
        std::set<u64> seen;
        for (const auto& p : filtered) {
            u64 o = p.projective_cyclic_order(ell);
            CHECK(allowed.count(o) == 1);
            seen.insert(o);
        }
        CHECK(seen == allowed);  // every order is realized by some pattern
    }
}

TEST_CASE("projective matrix arithmetic") {
    const FqField* F = FqField::get(19, 1);
    ProjMatrix S = ProjMatrix::from_ints(F, {0, 0, 1, 1, 0, 0, 0, 1, 0});
    ProjMatrix T = ProjMatrix::from_ints(F, {1, 0, 0, 0, 7, 0, 0, 0, 11});
    CHECK(S.projective_order() == 3);
    CHECK(T.projective_order() == 3);  // 7/1 has order 3 mod 19 (7^3 = 343 = 1)
    CHECK((S * S * S).is_identity());
    CHECK((S * S.inverse()).is_identity());
    CHECK((T.inverse() * T).is_identity());
    // scalar multiples are identified
    ProjMatrix T5 = ProjMatrix::from_ints(F, {5, 0, 0, 0, 35, 0, 0, 0, 55});
    CHECK(T == T5);
    CHECK_THROWS(ProjMatrix::from_ints(F, {1, 1, 0, 1, 1, 0, 0, 0, 1}));  // singular
    FqElem A, B, C;
    T.charpoly(A, B, C);
    CHECK(A == F->from_int(1 + 7 + 11));
    CHECK(C == F->from_int(77));
    ProjMatrix U = ProjMatrix::from_ints(F, {1, 1, 0, 0, 1, 0, 0, 0, 1});
    CHECK(U.projective_order() == 19);  // unipotent: order ell
}

namespace {

// The order-9 Heisenberg group generated by the shift and a diagonal cube
// root of unity, over any field containing a primitive cube root omega.
void check_heisenberg(u64 ell, i128 omega) {
    const FqField* F = FqField::get(ell, 1);
    ProjMatrix S = ProjMatrix::from_ints(F, {0, 0, 1, 1, 0, 0, 0, 1, 0});
    ProjMatrix T = ProjMatrix::from_ints(F, {1, 0, 0, 0, omega, 0, 0, 0, omega * omega});
    ClosureResult cl = group_closure({S, T});
    CHECK(cl.elements.size() == 9);
    CHECK(cl.element_orders == std::set<u64>{1, 3});
}

}  // namespace

TEST_CASE("closure of the extraspecial 3-group") {
    check_heisenberg(7, 2);
    check_heisenberg(19, 7);
}

TEST_CASE("closure tower over F_19: 9 -> 36 -> 216") {
    const FqField* F = FqField::get(19, 1);
    ProjMatrix S = ProjMatrix::from_ints(F, {0, 0, 1, 1, 0, 0, 0, 1, 0});
    ProjMatrix T = ProjMatrix::from_ints(F, {1, 0, 0, 0, 7, 0, 0, 0, 11});
    // the discrete Fourier matrix normalizes <S, T>
    ProjMatrix V = ProjMatrix::from_ints(F, {1, 1, 1, 1, 7, 11, 1, 11, 7});
    ClosureResult mid = group_closure({S, T, V});
    CHECK(mid.elements.size() == 36);
    CHECK(mid.element_orders == std::set<u64>{1, 2, 3, 4});
    ProjMatrix D = ProjMatrix::from_ints(F, {1, 0, 0, 0, 1, 0, 0, 0, 7});
    ClosureResult full = group_closure({S, T, V, D});
    CHECK(full.elements.size() == 216);
    CHECK(full.element_orders == std::set<u64>{1, 2, 3, 4, 6});

    // group axioms on the closure: closed under product and inverse, and
    // element orders divide the group order
    auto contains = [&](const ProjMatrix& g) {
        return std::binary_search(full.elements.begin(), full.elements.end(), g);
    };
    for (size_t i = 0; i < full.elements.size(); i += 9) {
        CHECK(contains(full.elements[i].inverse()));
        for (size_t j = 0; j < full.elements.size(); j += 11)
            CHECK(contains(full.elements[i] * full.elements[j]));
        CHECK(216 % full.elements[i].projective_order() == 0);
    }
}

TEST_CASE("the order-216 closure matches the shipped spectrum entry") {
    const SpectraPreset& ps = preset_conservative_default();
    const SpectrumEntry* derived = nullptr;
    for (const auto& e : ps.entries)
        if (e.id == MitchellCase::H216 && e.provenance == SpectrumProvenance::Derived)
            derived = &e;
    REQUIRE(derived != nullptr);
    CHECK(derived->orders == std::set<u64>{1, 2, 3, 4, 6});
}

TEST_CASE("conic stabilizers satisfy B^3 = C A^3") {
    int checked = 0;
    for (u64 ell : {7ull, 11ull, 13ull}) {
        const FqField* F = FqField::get(ell, 1);
        u64 seed = 42 + ell;
        auto rnd = [&]() {
            seed = seed * 6364136223846793005ull + 1442695040888963407ull;
            return (seed >> 33) % ell;
        };
        for (int trial = 0; trial < 150; ++trial) {
            FqElem k = F->from_int((i128)(1 + rnd() % (ell - 1)));
            FqElem a = F->from_int((i128)rnd()), b = F->from_int((i128)rnd());
            FqElem c = F->from_int((i128)rnd()), d = F->from_int((i128)rnd());
            ProjMatrix M;
            try {
                M = conic_stabilizer(k, a, b, c, d);
            } catch (const std::exception&) {
                continue;  // singular parameter matrix
            }
            FqElem A, B, C;
            M.charpoly(A, B, C);
            CHECK(B * B * B == C * A * A * A);
            ++checked;
        }
    }
    CHECK(checked >= 300);
    // nonsquare k forces the quadratic extension
    const FqField* F7 = FqField::get(7, 1);
    ProjMatrix M = conic_stabilizer(F7->from_int(3), F7->one(), F7->one(), F7->zero(), F7->one());
    CHECK(M.field->ell() == 7);
    CHECK(M.field->k() == 2);
    // generic conic elements have order dividing |PGL(2, ell)| = (ell+1) ell (ell-1)
    const FqField* F11 = FqField::get(11, 1);
    for (int a = 1; a < 5; ++a)
        for (int d = 1; d < 5; ++d) {
            if ((a * d) % 11 == 6) continue;  // determinant zero
            ProjMatrix M2 = conic_stabilizer(F11->one(), F11->from_int(a), F11->from_int(2),
                                             F11->from_int(3), F11->from_int(d));
            if (M2.field != F11) continue;
            u64 o = M2.projective_order();
            CHECK((u64)(12 * 11 * 10) % o == 0);
        }
}

namespace {

// independent oracle for the order-168 simple group: 2x2 matrices of
// determinant 1 over F_7 modulo +-1
std::pair<size_t, std::set<u64>> psl27_by_enumeration() {
    using Mat = std::array<int, 4>;
    auto mul = [](Mat x, Mat y) {
        return Mat{(x[0] * y[0] + x[1] * y[2]) % 7, (x[0] * y[1] + x[1] * y[3]) % 7,
                   (x[2] * y[0] + x[3] * y[2]) % 7, (x[2] * y[1] + x[3] * y[3]) % 7};
    };
    auto canon = [](Mat x) {
        Mat n{(7 - x[0]) % 7, (7 - x[1]) % 7, (7 - x[2]) % 7, (7 - x[3]) % 7};
        return std::min(x, n);
    };
    std::set<Mat> elems;
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b)
            for (int c = 0; c < 7; ++c)
                for (int d = 0; d < 7; ++d)
                    if (((a * d - b * c) % 7 + 7) % 7 == 1) elems.insert(canon(Mat{a, b, c, d}));
    std::set<u64> orders;
    Mat id{1, 0, 0, 1};
    for (Mat g : elems) {
        Mat x = g;
        u64 o = 1;
        while (canon(x) != id) {
            x = mul(x, g);
            ++o;
        }
        orders.insert(o);
    }
    return {elems.size(), orders};
}

// independent oracle for the alternating group A6: even permutations of 6
std::pair<size_t, std::set<u64>> a6_by_enumeration() {
    std::array<int, 6> p{0, 1, 2, 3, 4, 5};
    size_t count = 0;
    std::set<u64> orders;
    do {
        int inversions = 0;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (p[i] > p[j]) ++inversions;
        if (inversions % 2) continue;
        ++count;
        // order = lcm of cycle lengths
        std::array<bool, 6> seen{};
        u64 o = 1;
        for (int i = 0; i < 6; ++i) {
            if (seen[i]) continue;
            u64 len = 0;
            for (int j = i; !seen[j]; j = p[j]) {
                seen[j] = true;
                ++len;
            }
            o = std::lcm(o, len);
        }
        orders.insert(o);
    } while (std::next_permutation(p.begin(), p.end()));
    return {count, orders};
}

}  // namespace

TEST_CASE("order spectra of the order-168 and order-360 cases match enumeration") {
    auto [n168, o168] = psl27_by_enumeration();
    CHECK(n168 == 168);
    CHECK(o168 == std::set<u64>{1, 2, 3, 4, 7});
    auto [n360, o360] = a6_by_enumeration();
    CHECK(n360 == 360);
    CHECK(o360 == std::set<u64>{1, 2, 3, 4, 5});
    // the shipped derived entries agree with the oracles
    for (const auto& e : preset_conservative_default().entries) {
        if (e.provenance != SpectrumProvenance::Derived) continue;
        if (e.id == MitchellCase::I) CHECK(e.orders == o168);
        if (e.id == MitchellCase::J) CHECK(e.orders == o360);
    }
}

TEST_CASE("spectra presets serialize and parse losslessly") {
    std::vector<SpectraPreset> originals;
    for (const SpectraPreset* p : builtin_presets()) originals.push_back(*p);
    std::string text = serialize_spectra(originals);
    std::istringstream in(text);
    std::vector<SpectraPreset> parsed = parse_spectra(in);
    REQUIRE(parsed.size() == originals.size());
    CHECK(serialize_spectra(parsed) == text);
    for (size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].name == originals[i].name);
        CHECK(parsed[i].t_mode == originals[i].t_mode);
        CHECK(parsed[i].admissibility == originals[i].admissibility);
        REQUIRE(parsed[i].entries.size() == originals[i].entries.size());
        for (size_t j = 0; j < parsed[i].entries.size(); ++j) {
            CHECK(parsed[i].entries[j].id == originals[i].entries[j].id);
            CHECK(parsed[i].entries[j].orders == originals[i].entries[j].orders);
            CHECK(parsed[i].entries[j].provenance == originals[i].entries[j].provenance);
            CHECK(parsed[i].entries[j].ell_condition == originals[i].entries[j].ell_condition);
        }
    }
}

TEST_CASE("candidate primes of the built-in presets") {
    auto is_split_d1 = [](u64 ell) { return ell % 4 == 1; };
    auto is_inert_d1 = [](u64 ell) { return ell % 4 == 3; };
    CHECK(exceptional_candidates(preset_paper_split_d1(), 1, is_split_d1) ==
          std::set<u64>{5, 13});
    CHECK(exceptional_candidates(preset_paper_inert_d1(), 1, is_inert_d1) ==
          std::set<u64>{7, 11, 19});
    CHECK(exceptional_candidates(preset_paper_88(), 7, [](u64) { return true; }) ==
          std::set<u64>{5, 7, 11, 13, 19});
}

TEST_CASE("a prime is a candidate iff a spectrum order meets its inertia orders") {
    for (const SpectraPreset* ps : builtin_presets()) {
        for (u64 ell : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
            for (int t : {1, 2}) {
                bool expect = false;
                std::set<u64> inertia = projective_inertia_orders(ell);
                for (const auto& e : ps->entries) {
                    if (!e.admits(ell, t, ps->admissibility)) continue;
                    for (u64 o : e.orders)
                        if (inertia.count(o)) expect = true;
                }
                CHECK(exceptional_candidate_at(*ps, ell, t) == expect);
            }
        }
    }
    // 17 vs 19 under the level-88 preset: order 18 is only admitted when
    // 9 divides ell - 1, so 19 triggers and 17 does not
    CHECK(exceptional_candidate_at(preset_paper_88(), 19, 2));
    CHECK(!exceptional_candidate_at(preset_paper_88(), 17, 2));
}

TEST_CASE("admissible exceptional orders are deduplicated and positive") {
    auto orders = admissible_exceptional_orders(preset_paper_88(), 5, 2);
    CHECK(!orders.empty());
    std::set<MitchellCase> seen;
    for (auto [c, o] : orders) {
        CHECK(o > 0);
        CHECK(case_is_exceptional(c));
        CHECK(seen.insert(c).second);
    }
    // the (5, 2) extras are present under this preset
    bool has_x = false;
    for (auto [c, o] : orders)
        if (c == MitchellCase::X2A6 || c == MitchellCase::XA7) has_x = true;
    CHECK(has_x);
}
