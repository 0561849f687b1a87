#pragma once

#include "galrep3/catalog.hpp"
#include "galrep3/family.hpp"
#include "galrep3/sieves.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace galrep3 {

enum class VerdictStatus {
    ExcludedByHypothesis,  // ell lies in an excluded congruence class
    CertifiedPSL3,
    CertifiedPSU3,
    Candidate,         // some cases survive; listed in surviving_cases
    InsufficientData,  // a step lacked witnesses
};

struct CaseWitness {
    u64 p = 0;             // witnessing table prime (0 = structural exclusion)
    std::string quantity;  // the computed quantity that excludes the case
};

struct PrimeVerdict {
    u64 ell = 0;
    SplittingType splitting = SplittingType::Split;
    VerdictStatus status = VerdictStatus::InsufficientData;
    std::vector<std::string> surviving_cases;
    std::map<std::string, CaseWitness> witnesses;  // case token -> exclusion witness
    std::string detail;

    std::string status_string() const;  // stable taxonomy for reports
};

// One reducibility hypothesis: the one-dimensional constituent is
// chi^i * epsilon with epsilon of 2-power order <= the conductor-mode bound.
struct CharacterHypothesis {
    int exponent_i = 0;
    u64 order_bound = 1;  // allowed 2-power orders divide this
};

struct RefutationResult {
    bool refuted = false;
    bool insufficient = false;
    std::optional<CharacterHypothesis> survivor;
    bool trivial_survives = false;  // epsilon = 1 itself is a root everywhere
    std::string survivor_detail;
};

// Largest 2-power order available to the auxiliary character under the
// family's conductor mode (geometric: bound/4; modular: 2-part of phi(c) for
// the largest c with c^2 | N).
u64 epsilon_order_bound(const FamilyDescriptor& desc);

// Try to kill every hypothesis (i, epsilon): hypothesis survives at p iff
// some root rho of the residual charpoly has rho / p^i of allowed 2-power
// order in F_{ell^{3t}}.
RefutationResult refute_character(u64 ell, const EigenTable& table, u64 order_bound);

// Order of the projective class of any matrix with squarefree charpoly f:
// lcm of element_order(alpha_i / alpha_j) over root pairs, computed in
// F_{ell^{6t}}. Returns 0 for non-squarefree f (semisimplicity unknown).
u64 projective_order(const FqPoly& f);

struct CertifyOptions {
    const SpectraPreset* preset = nullptr;  // default: builtin by splitting/D
    u64 epsilon_order_bound = 0;            // 0 = derive from the descriptor
    u64 lemma_sample_size = 500;            // sampled unitariness check, ell > 13
};

PrimeVerdict certify_image(u64 ell, const EigenTable& table, const CertifyOptions& opts = {});

struct CongruenceResult {
    bool inconclusive = false;  // empty common support
    u64 checked = 0;
    std::vector<u64> violations;
};

// Checks reduce(a_p) = reduce(c(p)) + reduce(b_p) mod a prime above ell for
// every common p coprime to ell and both levels. offset_poly holds the
// coefficients of c as a polynomial in p, low degree first.
CongruenceResult congruence_check(const EigenTable& a, const std::map<u64, QuadInt>& b,
                                  const std::vector<i64>& offset_poly, u64 ell);

}  // namespace galrep3
