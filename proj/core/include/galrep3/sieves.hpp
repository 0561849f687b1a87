#pragma once

#include "galrep3/family.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace galrep3 {

// A table prime used to probe the reducibility congruences, together with the
// possible values of the auxiliary character at it.
struct Probe {
    u64 p = 0;
    std::set<int> allowed_signs;  // nonempty subset of {+1, -1}
    int group_id = 0;
};

// Dirichlet character of prime order 2 or 3 given by exponents at fixed
// generators of (Z/modulus)*. Values are stored as exponents of a primitive
// order-th root of unity; a full residue table makes evaluation O(1).
struct CharacterSpec {
    u64 modulus = 1;
    int order = 2;
    std::vector<u64> generators;
    std::vector<u64> generator_orders;
    std::vector<int> exponents;  // exponent at each generator, in [0, order)

    // exponent of the value at n (0 <= result < order); n must be coprime to
    // the modulus.
    int eval(u64 n) const;
    bool is_trivial() const;
    std::string str() const;

    std::vector<int> table;  // residue -> exponent, -1 for non-coprime
    void build_table();
};

// All nontrivial characters of exact order r (2 or 3) modulo m, in a fixed
// deterministic order.
std::vector<CharacterSpec> enumerate_characters(u64 modulus, int order);

struct SieveWitness {
    u64 p = 0;           // witnessing table prime
    int sign = 0;        // probe sign (reducibility sieve only)
    int exponent_i = 0;  // probe exponent (reducibility sieve only)
    u64 norm = 0;        // the factored integer the candidate divides
    Factorization norm_factors;
};

struct SieveReport {
    std::string sieve_id;
    std::map<u64, SieveWitness> candidates;  // ell -> first witness
    std::map<u64, std::string> excluded;     // ell -> exclusion reason
    bool inconclusive = false;               // no usable witness
    bool all_primes = false;                 // congruence degenerates: every ell survives

    std::set<u64> candidate_primes() const;
};

// Smallest table prime p = 1 or -1 (mod d) within `residues` with nonreal a_p;
// signs are {+1} when p = 1 (mod d), {+1,-1} otherwise.
std::optional<Probe> find_probe(const EigenTable& table, u64 d, const std::set<u64>& residues);

// For each probe, sign s and exponent i in {0,1,2} evaluate
//   v = s^3 p^{3i} - a_p s^2 p^{2i} + p conj(a_p) s p^i - p^3
// exactly; candidates are the primes dividing norm(v) for some (s, i), taken
// as a union within each probe group and intersected across groups, minus the
// standard exclusions ({2, 3}, ell | D, bad primes, probe primes).
SieveReport reducibility_sieve(const EigenTable& table, const std::vector<Probe>& probes);

struct CubicCmResult {
    SieveReport report;
    bool cm_flag = false;  // every witness has a_p = 0 exactly
};
// Case-d sieve against a fixed cubic character psi mod N'.
CubicCmResult cubic_cm_sieve(const EigenTable& table, const CharacterSpec& psi);

struct DualityResult {
    SieveReport report;
    bool dual_flag = false;  // norm(a_p) = p^2 exactly at every witness
};
// Case-c sieve against a fixed quadratic character gamma.
DualityResult duality_sieve(const EigenTable& table, const CharacterSpec& gamma);

// Case-e (and inert case-f, k = 1) sieve: candidates divide
// norm(a_p^3 - conj(a_p)^3) for every listed witness. Requires D != 3 and
// nonreal a_p at every witness.
SieveReport selfdual_sieve(const EigenTable& table, const std::vector<u64>& witnesses);

struct Lemma83Report {
    u64 ell = 0;
    bool exhaustive = true;
    u64 pairs_total = 0;        // (a, p) pairs considered
    u64 irreducible_count = 0;  // pairs with irreducible twisted charpoly
    u64 divisibility_violations = 0;  // root order not dividing (l^3+1)(l-1)
    u64 multiple_violations = 0;      // root order a multiple of l^4+l^2+1
};
// Exhaustive for ell <= 13; larger ell are sampled (sample_size pairs).
Lemma83Report lemma83_verify(u64 ell, u64 sample_size = 2000);

// Conductor bound for the auxiliary character when the only bad prime is 2:
// excluding ell = r (mod m) caps the 2-power order of the character image,
// and d = 4 * (order bound). t = 1 needs r = 1; t = 2 needs r = m - 1.
u64 geometric_conductor_bound(const std::set<u64>& bad_primes, int t, u64 modulus, u64 residue);

}  // namespace galrep3
