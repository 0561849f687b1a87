#include "galrep3/certify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace galrep3 {

namespace {

int field_degree(u64 D, u64 ell) {
    switch (splitting(D, ell)) {
        case SplittingType::Split:
            return 1;
        case SplittingType::Inert:
            return 2;
        case SplittingType::Ramified:
            throw std::invalid_argument("ramified prime");
    }
    return 1;
}

bool is_two_power(u64 n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string PrimeVerdict::status_string() const {
    switch (status) {
        case VerdictStatus::ExcludedByHypothesis:
            return "excluded_by_hypothesis";
        case VerdictStatus::CertifiedPSL3:
            return "certified:PSL3";
        case VerdictStatus::CertifiedPSU3:
            return "certified:PSU3";
        case VerdictStatus::InsufficientData:
            return "insufficient_data";
        case VerdictStatus::Candidate: {
            std::string s = "candidate:";
            for (size_t i = 0; i < surviving_cases.size(); ++i) {
                if (i) s += ",";
                s += surviving_cases[i];
            }
            return s;
        }
    }
    return "?";
}

u64 epsilon_order_bound(const FamilyDescriptor& desc) {
    if (desc.mode == ConductorMode::Geometric) {
        u64 b = desc.epsilon_conductor_bound / 4;
        return b == 0 ? 1 : b;
    }
    // modular: conductor c of the auxiliary character satisfies c^2 | N
    u64 c = 1;
    for (u64 d = 1; d * d <= desc.level; ++d)
        if (desc.level % (d * d) == 0) c = d;
    u64 phi = 1;
    for (auto [p, e] : factor(c).factors) {
        u64 q = 1;
        for (unsigned i = 0; i + 1 < e; ++i) q *= p;
        phi *= q * (p - 1);
    }
    u64 b = 1;
    while (phi % (2 * b) == 0) b *= 2;
    return b;
}

RefutationResult refute_character(u64 ell, const EigenTable& table, u64 order_bound) {
    RefutationResult res;
    if (!is_two_power(order_bound)) throw std::invalid_argument("order bound must be a 2-power");
    int t = field_degree(table.descriptor.D, ell);
    std::vector<std::pair<u64, const QuadInt*>> usable;
    for (auto& [p, a] : table.entries)
        if (p != ell) usable.push_back({p, &a});
    if (usable.empty()) {
        res.insufficient = true;
        return res;
    }
    const FqField* Ft = FqField::get(ell, t);
    const FqField* E = FqField::get(ell, 3 * t);
    FqEmbedding emb = FqEmbedding::make(Ft, E);
    Factorization group = factor((u64)(E->q() - 1));

    struct RootData {
        u64 p;
        std::vector<FqElem> roots;
    };
    std::vector<RootData> data;
    for (auto [p, a] : usable) {
        FqPoly f = emb.map(residual_charpoly(p, *a, ell));
        RootData rd{p, {}};
        for (auto& [r, mult] : poly_roots(f)) rd.roots.push_back(r);
        data.push_back(std::move(rd));
    }

    for (int i = 0; i <= 2; ++i) {
        bool survives = true, trivial = true;
        for (auto& rd : data) {
            FqElem pi = E->from_int((i128)(rd.p % ell)).pow((u128)i);
            FqElem pinv = pi.inv();
            bool any = false, has_trivial = false;
            for (auto& rho : rd.roots) {
                FqElem zeta = rho * pinv;
                if (zeta.is_one()) {
                    any = has_trivial = true;
                    continue;
                }
                u64 o = element_order(zeta, group);
                if (is_two_power(o) && o <= order_bound) any = true;
            }
            if (!any) {
                survives = false;
                break;
            }
            if (!has_trivial) trivial = false;
        }
        if (survives) {
            res.survivor = CharacterHypothesis{i, order_bound};
            res.trivial_survives = trivial;
            std::ostringstream os;
            os << "i=" << i << (trivial ? ", trivial epsilon" : ", some 2-power epsilon");
            res.survivor_detail = os.str();
            return res;
        }
    }
    res.refuted = true;
    return res;
}

u64 projective_order(const FqPoly& f) {
    if (f.degree() != 3 || !f.is_monic()) throw std::invalid_argument("need a monic cubic");
    if (!poly_squarefree(f)) return 0;
    const FqField* F = f.field;
    const FqField* E = FqField::get(F->ell(), 6 * F->k());
    if (E->q() - 1 > (u128)1 << 63) throw overflow_error("projective_order: field too large");
    FqEmbedding emb = FqEmbedding::make(F, E);
    FqPoly g = emb.map(f);
    std::vector<FqElem> roots;
    for (auto& [r, mult] : poly_roots(g)) roots.push_back(r);
    if (roots.size() != 3) throw std::logic_error("cubic without 3 roots in splitting field");
    Factorization group = factor((u64)(E->q() - 1));
    u64 l = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            u64 o = element_order(roots[i] / roots[j], group);
            l = std::lcm(l, o);
        }
    return l;
}

PrimeVerdict certify_image(u64 ell, const EigenTable& table, const CertifyOptions& opts) {
    const FamilyDescriptor& desc = table.descriptor;
    if (ell <= 3 || !is_prime(ell)) throw std::invalid_argument("certify_image: need a prime > 3");
    if (desc.bad_primes.count(ell) || (desc.level != 0 && desc.level % ell == 0))
        throw std::invalid_argument("certify_image: ell is a prime of bad reduction");
    if (desc.D % ell == 0) throw std::invalid_argument("certify_image: ell is ramified");

    PrimeVerdict v;
    v.ell = ell;
    v.splitting = splitting(desc.D, ell);
    int t = v.splitting == SplittingType::Inert ? 2 : 1;

    if (desc.mode == ConductorMode::Geometric) {
        for (auto [m, r] : desc.excluded_congruences)
            if (ell % m == r % m) {
                v.status = VerdictStatus::ExcludedByHypothesis;
                v.detail = "ell = " + std::to_string(r) + " (mod " + std::to_string(m) + ")";
                return v;
            }
    }

    std::vector<std::pair<u64, const QuadInt*>> usable;
    for (auto& [p, a] : table.entries)
        if (p != ell) usable.push_back({p, &a});
    if (usable.empty()) {
        v.status = VerdictStatus::InsufficientData;
        v.detail = "no usable table entries";
        return v;
    }

    std::vector<std::string> surviving;

    // (1) reducibility: kills cases a, b and the reducible subcases of c, d
    u64 bound = opts.epsilon_order_bound ? opts.epsilon_order_bound : epsilon_order_bound(desc);
    RefutationResult red = refute_character(ell, table, bound);
    if (red.insufficient) {
        v.status = VerdictStatus::InsufficientData;
        v.detail = "reducibility refutation lacks witnesses";
        return v;
    }
    if (red.refuted)
        v.witnesses["reducible"] = {0, "every hypothesis chi^i*epsilon killed at some table prime"};
    else {
        surviving.push_back("reducible");
        v.detail = "survivor " + red.survivor_detail;
    }

    // (2) case c: for every quadratic gamma find p with gamma(p) = -1 and
    // norm(a_p) != p^2 (mod ell)
    bool c_ok = true;
    for (const auto& gamma : enumerate_characters(desc.quadratic_modulus(), 2)) {
        bool killed = false;
        for (auto [p, a] : usable) {
            if (std::gcd(p, gamma.modulus) != 1 || gamma.eval(p) != 1) continue;
            i128 diff = (i128)a->norm64() - (i128)p * p;
            i128 m = diff % (i128)ell;
            if (m != 0) {
                killed = true;
                v.witnesses["c"] = {p, "norm(a_p) - p^2 nonzero mod ell"};
                break;
            }
        }
        if (!killed) {
            c_ok = false;
            break;
        }
    }
    if (!c_ok) surviving.push_back("c");
    if (c_ok && !v.witnesses.count("c"))
        v.witnesses["c"] = {0, "no nontrivial quadratic character unramified outside bad primes"};

    // (3) case d: for every cubic psi mod N' find p with psi(p) != 1 and
    // a_p != 0 (mod lambda)
    bool d_ok = true;
    for (const auto& psi : enumerate_characters(desc.n_prime(), 3)) {
        bool killed = false;
        for (auto [p, a] : usable) {
            if (std::gcd(p, psi.modulus) != 1 || psi.eval(p) == 0) continue;
            if (!reduce_quadint(*a, ell).is_zero()) {
                killed = true;
                v.witnesses["d"] = {p, "a_p nonzero mod lambda at psi(p) != 1"};
                break;
            }
        }
        if (!killed) {
            d_ok = false;
            break;
        }
    }
    if (!d_ok) surviving.push_back("d");
    if (d_ok && !v.witnesses.count("d"))
        v.witnesses["d"] = {0, "no cubic character mod N'"};

    // (4) cases e and (inert) f with k = 1: find p with a_p^3 != conj(a_p)^3
    // mod lambda
    bool e_ok = false;
    for (auto [p, a] : usable) {
        QuadInt w = a->cube() - a->conj().cube();
        if (!reduce_quadint(w, ell).is_zero()) {
            e_ok = true;
            v.witnesses["e"] = {p, "a_p^3 - conj(a_p)^3 nonzero mod lambda"};
            break;
        }
    }
    if (!e_ok) {
        surviving.push_back("e");
        if (t == 2) surviving.push_back("f");
    } else if (t == 2) {
        v.witnesses["f"] = v.witnesses["e"];
    }

    // (5) exceptional cases: only live if ell is an exceptional candidate for
    // the preset; then exclude each admissible group by a projective order
    // dividing none of their orders
    const SpectraPreset& preset = opts.preset ? *opts.preset : preset_conservative_default();
    if (!exceptional_candidate_at(preset, ell, t)) {
        v.witnesses["exceptional"] = {0, "no admissible spectrum meets the inertia orders"};
    } else {
        for (auto [cid, order] : admissible_exceptional_orders(preset, ell, t)) {
            bool killed = false;
            for (auto [p, a] : usable) {
                FqPoly f = residual_charpoly(p, *a, ell);
                u64 po = 0;
                try {
                    po = projective_order(f);
                } catch (const overflow_error&) {
                    break;  // field too large to certify this step
                }
                if (po != 0 && order % po != 0) {
                    killed = true;
                    v.witnesses[case_name(cid)] = {
                        p, "projective order " + std::to_string(po) + " does not divide |G|"};
                    break;
                }
            }
            if (!killed) surviving.push_back(case_name(cid));
        }
    }

    // (6) inert: the reduction intertwines conjugation with Frobenius; then
    // the unitariness lemma rules out the subfield PSL(3, F_{ell^2}), and
    // Mitchell's proper PSU subgroups all occur among the excluded cases
    if (t == 2) {
        for (auto [p, a] : usable) {
            FqElem lhs = reduce_quadint(a->conj(), ell);
            FqElem rhs = reduce_quadint(*a, ell).frobenius();
            if (!(lhs == rhs))
                throw std::logic_error("conjugation/Frobenius compatibility violated");
        }
        Lemma83Report lem = lemma83_verify(ell, opts.lemma_sample_size);
        if (lem.divisibility_violations == 0 && lem.multiple_violations == 0) {
            std::ostringstream os;
            os << "unitariness: " << lem.irreducible_count << " irreducible instances ("
               << (lem.exhaustive ? "exhaustive" : "sampled") << "), 0 violations";
            v.witnesses["psl3-subfield"] = {0, os.str()};
        } else {
            surviving.push_back("psl3-subfield");
        }
    }

    std::sort(surviving.begin(), surviving.end());
    surviving.erase(std::unique(surviving.begin(), surviving.end()), surviving.end());
    v.surviving_cases = surviving;
    if (surviving.empty())
        v.status = t == 2 ? VerdictStatus::CertifiedPSU3 : VerdictStatus::CertifiedPSL3;
    else
        v.status = VerdictStatus::Candidate;
    return v;
}

CongruenceResult congruence_check(const EigenTable& a, const std::map<u64, QuadInt>& b,
                                  const std::vector<i64>& offset_poly, u64 ell) {
    CongruenceResult res;
    for (auto& [p, ap] : a.entries) {
        auto it = b.find(p);
        if (it == b.end()) continue;
        if (p == ell || a.descriptor.bad_primes.count(p)) continue;
        if (a.descriptor.level != 0 && a.descriptor.level % p == 0) continue;
        ++res.checked;
        i128 c = 0, pw = 1;
        for (i64 coeff : offset_poly) {
            c += (i128)coeff * pw;
            pw *= (i128)p;
        }
        FqElem lhs = reduce_quadint(ap, ell);
        FqElem rhs = reduce_quadint(it->second, ell) + lhs.field->from_int(c);
        if (!(lhs == rhs)) res.violations.push_back(p);
    }
    if (res.checked == 0) res.inconclusive = true;
    return res;
}

}  // namespace galrep3
