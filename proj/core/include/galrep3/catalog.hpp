#pragma once

#include "galrep3/fq.hpp"

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <string>

namespace galrep3 {

// Mitchell's maximal subgroups of PSL(3, F_{p^t}), t = 1 or 2, plus the two
// extra possibilities at (p, t) = (5, 2).
enum class MitchellCase { A, B, C, D, E, F, G, H216, H72, H36, I, J, X2A6, XA7 };

const char* case_name(MitchellCase c);
std::optional<MitchellCase> case_from_name(const std::string& s);
bool case_is_exceptional(MitchellCase c);

// Existence predicate for (ell, t) per the classification's side conditions.
bool case_exists(MitchellCase c, u64 ell, int t);

// Exact group order. k is only meaningful for case F (PSL(3, F_{p^k}),
// 1 <= k <= t, validated); case G requires t = 2. The constant-order cases
// (h/i/j and the (5,2) extras) evaluate regardless of the existence predicate.
u128 case_order(MitchellCase c, u64 ell, int t, int k = 1);

// ---- inertia patterns (semisimplified action of tame inertia) ----

struct InertiaPattern {
    int id;                        // 1..6
    std::string description;       // e.g. "(1, chi, chi^2)"
    std::array<int, 3> weights;    // Hodge-Tate weight multiset
    // projectivized cyclic order: one of ell-1, ell+1, ell^2+ell+1, 1
    std::function<u64(u64)> projective_cyclic_order;
};

// The six patterns, minus those whose weight multiset repeats a value more
// than hodge_bound times (bound 2 removes exactly the scalar pattern).
std::vector<InertiaPattern> inertia_patterns(unsigned hodge_bound = 2);

// {ell-1, ell+1, ell^2+ell+1}
std::set<u64> projective_inertia_orders(u64 ell);

// ---- projective 3x3 matrices and the closure oracle ----

// 3x3 matrix over an FqField, identified up to scalar: entries are normalized
// so the first nonzero entry (row-major) is 1.
struct ProjMatrix {
    const FqField* field = nullptr;
    std::array<FqElem, 9> m;

    static ProjMatrix from_entries(const FqField* F, const std::array<FqElem, 9>& ent);
    static ProjMatrix from_ints(const FqField* F, const std::array<i128, 9>& ent);

    ProjMatrix operator*(const ProjMatrix& o) const;
    bool operator==(const ProjMatrix& o) const;
    bool operator<(const ProjMatrix& o) const;
    bool is_identity() const;

    FqElem det() const;
    ProjMatrix inverse() const;
    // charpoly x^3 - A x^2 + B x - C of the (normalized) representative
    void charpoly(FqElem& A, FqElem& B, FqElem& C) const;

    u64 projective_order(u64 cap = 100000) const;
};

// The stabilizer matrix of the conic y^2 = k x z for parameters
// (alpha, beta, gamma, delta). If k has no square root in the parameters'
// field the construction moves to its quadratic extension.
ProjMatrix conic_stabilizer(const FqElem& k, const FqElem& alpha, const FqElem& beta,
                            const FqElem& gamma, const FqElem& delta);

struct ClosureResult {
    std::vector<ProjMatrix> elements;
    std::set<u64> element_orders;  // projective orders
};

// Breadth-first closure of the generated subgroup; throws if it exceeds cap.
ClosureResult group_closure(const std::vector<ProjMatrix>& generators, size_t cap = 10000);

// ---- order spectra and the exceptional-candidate sieve ----

enum class SpectrumProvenance { Derived, Config };
enum class Admissibility { Strict, Conservative };

struct SpectrumEntry {
    MitchellCase id;
    std::set<u64> orders;  // projective element orders
    SpectrumProvenance provenance = SpectrumProvenance::Config;
    // optional extra congruence condition on ell (modulus, allowed residues)
    std::optional<std::pair<u64, std::set<u64>>> ell_condition;
    std::string note;

    bool admits(u64 ell, int t, Admissibility mode) const;
};

struct SpectraPreset {
    std::string name;
    int t_mode = 0;  // 1 or 2 fixed, 0 = decide per ell by splitting in Q(sqrt(-D))
    Admissibility admissibility = Admissibility::Conservative;
    std::vector<SpectrumEntry> entries;

    u64 max_order() const;
};

// Built-in presets reproducing the published candidate sets.
const SpectraPreset& preset_paper_split_d1();
const SpectraPreset& preset_paper_inert_d1();
const SpectraPreset& preset_paper_88();
// Family-agnostic fallback: mixed t, conservative admissibility, broadest
// shipped spectra (no congruence conditions).
const SpectraPreset& preset_conservative_default();
const SpectraPreset* find_builtin_preset(const std::string& name);
std::vector<const SpectraPreset*> builtin_presets();

std::vector<SpectraPreset> parse_spectra(std::istream& in);
std::string serialize_spectra(const std::vector<SpectraPreset>& presets);

// True iff some admissible entry's spectrum at (ell, t) meets the projective
// inertia orders of ell.
bool exceptional_candidate_at(const SpectraPreset& preset, u64 ell, int t);

// Primes ell > 3 passing `filter` for which some admissible entry's spectrum
// meets {ell-1, ell+1, ell^2+ell+1}. D decides t when t_mode == 0 (ramified
// ell checks both t = 1 and 2). Search is bounded by 1 + max spectrum order.
std::set<u64> exceptional_candidates(const SpectraPreset& preset, u64 D,
                                     const std::function<bool(u64)>& filter);

// Admissible exceptional group orders at (ell, t) under the preset's mode.
std::vector<std::pair<MitchellCase, u128>> admissible_exceptional_orders(
    const SpectraPreset& preset, u64 ell, int t);

}  // namespace galrep3
