#pragma once

#include "galrep3/intutil.hpp"
#include "galrep3/quadint.hpp"

#include <vector>

namespace galrep3 {

class FqField;

// Element of F_{ell^k}: coefficient vector c[0..k-1] w.r.t. the power basis
// of the field's modulus, low degree first.
struct FqElem {
    const FqField* field = nullptr;
    std::vector<u64> c;

    bool is_zero() const;
    bool is_one() const;

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator*(const FqElem& o) const;
    FqElem operator-() const;
    bool operator==(const FqElem& o) const;
    bool operator<(const FqElem& o) const;  // coefficient-vector order, low degree most significant

    FqElem inv() const;
    FqElem operator/(const FqElem& o) const { return *this * o.inv(); }
    FqElem pow(u128 e) const;
    FqElem frobenius() const;  // e^ell

    std::string str() const;
};

// F_{ell^k}. The modulus is the lexicographically smallest monic irreducible
// of degree k over F_ell (coefficients compared low-to-high degree), so field
// construction is reproducible across runs and platforms.
class FqField {
public:
    // Cached construction; returned pointer is valid for the process lifetime.
    static const FqField* get(u64 ell, unsigned k);

    u64 ell() const { return ell_; }
    unsigned k() const { return k_; }
    u128 q() const;                         // ell^k
    const std::vector<u64>& modulus() const { return mod_; }  // c0..c_{k-1} of x^k + ...

    FqElem zero() const;
    FqElem one() const;
    FqElem from_int(i128 v) const;          // image of a rational integer
    FqElem gen() const;                     // the class of x
    FqElem make(std::vector<u64> coeffs) const;

private:
    FqField(u64 ell, unsigned k);
    u64 ell_;
    unsigned k_;
    std::vector<u64> mod_;
    friend struct FqElem;
};

// Minimal m >= 1 with e^m = 1. Requires ell^k - 1 <= 2^63 (factorization of the
// group order drives the computation).
u64 element_order(const FqElem& e);
u64 element_order(const FqElem& e, const Factorization& group_order);

// Dense polynomial over an FqField, low degree first.
struct FqPoly {
    const FqField* field = nullptr;
    std::vector<FqElem> c;

    static FqPoly from_coeffs(const FqField* f, std::vector<FqElem> coeffs);
    static FqPoly from_ints(const FqField* f, const std::vector<i128>& coeffs);

    int degree() const;  // -1 for zero
    bool is_monic() const;
    FqElem eval(const FqElem& x) const;
};

// All roots in f's own field, with multiplicities, ordered by coefficient
// vector. f must be monic. Cantor-Zassenhaus behind a deterministic PRNG.
std::vector<std::pair<FqElem, unsigned>> poly_roots(const FqPoly& f);

// true iff f (monic) has no factor of degree < deg f.
bool poly_irreducible(const FqPoly& f);

// gcd(f, f') has degree 0
bool poly_squarefree(const FqPoly& f);

// Embedding F_{ell^m} -> F_{ell^n}, m | n: the subfield generator is mapped to
// the first root (coefficient-vector order) of the small modulus in the big field.
struct FqEmbedding {
    const FqField* from = nullptr;
    const FqField* to = nullptr;
    FqElem theta;  // image of the small field's generator

    static FqEmbedding make(const FqField* from, const FqField* to);
    FqElem map(const FqElem& e) const;
    FqPoly map(const FqPoly& f) const;
};

// Reduction of x + y*sqrt(-D) mod an unramified odd prime ell.
// Split: into F_ell via the smallest nonnegative root r of -D (swap: ell - r).
// Inert: into F_{ell^2} via a fixed root s of z^2 + D (swap: -s).
FqElem reduce_quadint(const QuadInt& q, u64 ell, bool swap_embedding = false);

}  // namespace galrep3
