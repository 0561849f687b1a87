#pragma once

#include "galrep3/fq.hpp"
#include "galrep3/quadint.hpp"

#include <iosfwd>
#include <map>
#include <set>
#include <string>

namespace galrep3 {

struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

enum class ConductorMode { Geometric, Modular };

struct FamilyDescriptor {
    std::string label;
    u64 D = 1;                 // coefficient field Q(sqrt(-D))
    u64 level = 0;             // 0 = unknown (geometric mode)
    std::set<u64> bad_primes;
    ConductorMode mode = ConductorMode::Geometric;
    // geometric mode: conductor bound d and the congruence classes of ell
    // excluded to obtain it
    u64 epsilon_conductor_bound = 1;
    std::vector<std::pair<u64, u64>> excluded_congruences;  // (modulus, residue)
    unsigned hodge_multiplicity_bound = 2;

    void validate() const;

    // product of the bad primes, with 3 replaced by 9 (cubic-character modulus)
    u64 n_prime() const;
    // modulus carrying every quadratic character unramified at the bad primes
    u64 quadratic_modulus() const;
};

struct EigenTable {
    FamilyDescriptor descriptor;
    std::map<u64, QuadInt> entries;  // p -> a_p

    bool has(u64 p) const { return entries.count(p) != 0; }
    const QuadInt& at(u64 p) const { return entries.at(p); }
};

struct FrobCharPoly {
    u64 p;
    // x^3 - a_p x^2 + p*conj(a_p) x - p^3
    QuadInt a;       // x^2 coefficient is -a
    QuadInt middle;  // p * conj(a)
    i128 constant;   // -p^3
};

EigenTable parse_table(std::istream& in);
EigenTable parse_table_file(const std::string& path);
std::string serialize_table(const EigenTable& t);

FrobCharPoly charpoly(u64 p, const QuadInt& a);

// coefficientwise reduction of charpoly(p, a) mod ell; lands in F_ell (split)
// or F_{ell^2} (inert). Requires ell odd, unramified, coprime to p and the level.
FqPoly residual_charpoly(u64 p, const QuadInt& a, u64 ell, bool swap_embedding = false);

}  // namespace galrep3
