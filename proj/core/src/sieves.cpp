#include "galrep3/sieves.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace galrep3 {

namespace {

// ---- structure of (Z/m)* ----

struct GroupComponent {
    u64 gen;    // generator lifted to Z/m via CRT
    u64 order;  // order of gen
};

u64 crt_lift(u64 residue, u64 q, u64 m) {
    // x = residue (mod q), x = 1 (mod m/q)
    u64 rest = m / q;
    for (u64 x = 1; x < m; x += rest)
        if (x % q == residue % q) return x;
    throw std::logic_error("crt_lift failed");
}

u64 unit_order(u64 g, u64 m, const Factorization& phi_f) {
    u64 ord = phi_f.input;
    for (auto [q, e] : phi_f.factors)
        for (unsigned i = 0; i < e; ++i)
            if (powmod(g, ord / q, m) == 1) ord /= q;
    return ord;
}

// independent cyclic generators of (Z/m)*, deterministic
std::vector<GroupComponent> unit_group(u64 m) {
    std::vector<GroupComponent> out;
    if (m <= 2) return out;
    for (auto [p, e] : factor(m).factors) {
        u64 q = 1;
        for (unsigned i = 0; i < e; ++i) q *= p;
        if (p == 2) {
            if (e == 1) continue;
            out.push_back({crt_lift(q - 1, q, m), 2});  // -1
            if (e >= 3) {
                u64 half = q / 4;  // order of 3 mod 2^e is 2^(e-2)
                out.push_back({crt_lift(3, q, m), half});
            }
        } else {
            u64 phi = q / p * (p - 1);
            Factorization pf = factor(phi);
            u64 g = 0;
            for (u64 c = 2; c < q; ++c) {
                if (c % p == 0) continue;
                if (unit_order(c, q, pf) == phi) {
                    g = c;
                    break;
                }
            }
            if (g == 0) throw std::logic_error("no primitive root");
            out.push_back({crt_lift(g, q, m), phi});
        }
    }
    return out;
}

}  // namespace

// ---- characters ----

void CharacterSpec::build_table() {
    table.assign(modulus, -1);
    // the generators are independent, so the group is the direct product of
    // the cyclic groups they generate
    std::vector<u64> idx(generators.size(), 0);
    while (true) {
        u64 r = 1 % modulus;
        long val = 0;
        for (size_t j = 0; j < generators.size(); ++j) {
            r = mulmod(r, powmod(generators[j], idx[j], modulus), modulus);
            val += (long)exponents[j] * (long)idx[j];
        }
        table[r] = (int)(val % order);
        size_t j = 0;
        for (; j < idx.size(); ++j) {
            if (++idx[j] < generator_orders[j]) break;
            idx[j] = 0;
        }
        if (j == idx.size()) break;
        if (idx.empty()) break;
    }
    if (modulus == 1) table.assign(1, 0);
}

int CharacterSpec::eval(u64 n) const {
    int v = table.at(n % modulus);
    if (v < 0) throw std::invalid_argument("character evaluated at non-coprime argument");
    return v;
}

bool CharacterSpec::is_trivial() const {
    return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

std::string CharacterSpec::str() const {
    std::ostringstream os;
    os << "chi[" << modulus << ", order " << order << ";";
    for (size_t j = 0; j < generators.size(); ++j)
        os << " " << generators[j] << "->" << exponents[j];
    os << "]";
    return os.str();
}

std::vector<CharacterSpec> enumerate_characters(u64 modulus, int order) {
    if (order != 2 && order != 3) throw std::invalid_argument("character order must be 2 or 3");
    if (modulus < 1) throw std::invalid_argument("modulus must be positive");
    auto comps = unit_group(modulus);
    std::vector<CharacterSpec> out;
    std::vector<int> exps(comps.size(), 0);
    while (true) {
        size_t j = 0;
        for (; j < exps.size(); ++j) {
            // a nonzero exponent at gen j needs order | ord(gen j)
            int lim = comps[j].order % (u64)order == 0 ? order : 1;
            if (++exps[j] < lim) break;
            exps[j] = 0;
        }
        if (j == exps.size()) break;
        CharacterSpec c;
        c.modulus = modulus;
        c.order = order;
        for (auto& g : comps) {
            c.generators.push_back(g.gen);
            c.generator_orders.push_back(g.order);
        }
        c.exponents = exps;
        c.build_table();
        out.push_back(std::move(c));
    }
    return out;
}

// ---- reports ----

std::set<u64> SieveReport::candidate_primes() const {
    std::set<u64> s;
    for (auto& [ell, w] : candidates) s.insert(ell);
    return s;
}

namespace {

// uniform exclusion policy: {2, 3}, ramified, bad, probe/witness primes
void apply_exclusions(SieveReport& rep, std::map<u64, SieveWitness> raw,
                      const FamilyDescriptor& desc, const std::set<u64>& probe_primes) {
    for (auto& [ell, w] : raw) {
        std::string reason;
        if (ell == 2 || ell == 3)
            reason = "ell <= 3";
        else if (desc.D % ell == 0)
            reason = "ramified";
        else if (desc.bad_primes.count(ell))
            reason = "bad reduction";
        else if (probe_primes.count(ell))
            reason = "probe prime";
        if (reason.empty())
            rep.candidates.emplace(ell, std::move(w));
        else
            rep.excluded.emplace(ell, reason);
    }
}

}  // namespace

// ---- probing and the reducibility sieve ----

std::optional<Probe> find_probe(const EigenTable& table, u64 d, const std::set<u64>& residues) {
    for (auto& [p, a] : table.entries) {
        if (a.is_real()) continue;
        if (!residues.count(p % d)) continue;
        Probe pr;
        pr.p = p;
        pr.allowed_signs = (p % d == 1 % d) ? std::set<int>{+1} : std::set<int>{+1, -1};
        return pr;
    }
    return std::nullopt;
}

SieveReport reducibility_sieve(const EigenTable& table, const std::vector<Probe>& probes) {
    if (probes.empty()) throw std::invalid_argument("reducibility_sieve: no probes");
    SieveReport rep;
    rep.sieve_id = "reducibility";
    const u64 D = table.descriptor.D;
    std::set<u64> probe_primes;
    std::map<int, std::vector<const Probe*>> groups;
    for (const auto& pr : probes) {
        if (!table.has(pr.p)) throw std::invalid_argument("probe prime not in table");
        if (table.at(pr.p).is_real()) throw std::invalid_argument("probe needs nonreal a_p");
        if (pr.allowed_signs.empty()) throw std::invalid_argument("probe with no allowed signs");
        probe_primes.insert(pr.p);
        groups[pr.group_id].push_back(&pr);
    }

    std::map<u64, SieveWitness> first_witness;
    bool have_inter = false;
    std::set<u64> inter;
    for (auto& [gid, members] : groups) {
        std::set<u64> group_set;
        for (const Probe* pr : members) {
            const QuadInt& a = table.at(pr->p);
            i128 p = (i128)pr->p;
            for (int s : {+1, -1}) {
                if (!pr->allowed_signs.count(s)) continue;
                i128 pw[7];
                pw[0] = 1;
                for (int j = 1; j <= 6; ++j) pw[j] = pw[j - 1] * p;
                for (int i = 0; i <= 2; ++i) {
                    // v = s^3 p^{3i} - a s^2 p^{2i} + p conj(a) s p^i - p^3
                    i128 x = (i128)s * pw[3 * i] - a.x * pw[2 * i] +
                             (i128)s * a.x * pw[i + 1] - pw[3];
                    i128 y = -a.y * pw[2 * i] - (i128)s * a.y * pw[i + 1];
                    if (x == 0 && y == 0) {
                        rep.all_primes = true;
                        continue;
                    }
                    auto div_p = [&](i128 c) { return c % p == 0; };
                    while (div_p(x) && div_p(y)) x /= p, y /= p;
                    QuadInt v{x, y, D};
                    u64 n = v.norm64();
                    Factorization f = factor(n);
                    for (auto [q, e] : f.factors) {
                        group_set.insert(q);
                        if (!first_witness.count(q))
                            first_witness.emplace(q, SieveWitness{pr->p, s, i, n, f});
                    }
                }
            }
        }
        if (!have_inter) {
            inter = group_set;
            have_inter = true;
        } else {
            std::set<u64> both;
            std::set_intersection(inter.begin(), inter.end(), group_set.begin(), group_set.end(),
                                  std::inserter(both, both.begin()));
            inter = both;
        }
    }
    std::map<u64, SieveWitness> raw;
    for (u64 q : inter) raw.emplace(q, first_witness.at(q));
    apply_exclusions(rep, std::move(raw), table.descriptor, probe_primes);
    return rep;
}

// ---- family-level obstruction sieves ----

CubicCmResult cubic_cm_sieve(const EigenTable& table, const CharacterSpec& psi) {
    if (psi.order != 3) throw std::invalid_argument("cubic_cm_sieve needs an order-3 character");
    CubicCmResult res;
    res.report.sieve_id = "cubic-cm";
    std::set<u64> witness_primes;
    u64 g = 0;
    bool all_zero = true;
    u64 first_witness = 0;
    for (auto& [p, a] : table.entries) {
        if (std::gcd(p, psi.modulus) != 1 || psi.eval(p) == 0) continue;
        witness_primes.insert(p);
        if (first_witness == 0) first_witness = p;
        if (!a.is_zero()) all_zero = false;
        g = std::gcd(g, a.norm64());
    }
    if (witness_primes.empty()) {
        res.report.inconclusive = true;
        return res;
    }
    res.cm_flag = all_zero;
    if (g == 0) {
        res.report.all_primes = true;
        return res;
    }
    Factorization f = factor(g);
    std::map<u64, SieveWitness> raw;
    for (auto [q, e] : f.factors) raw.emplace(q, SieveWitness{first_witness, 0, 0, g, f});
    apply_exclusions(res.report, std::move(raw), table.descriptor, witness_primes);
    return res;
}

DualityResult duality_sieve(const EigenTable& table, const CharacterSpec& gamma) {
    if (gamma.order != 2) throw std::invalid_argument("duality_sieve needs an order-2 character");
    DualityResult res;
    res.report.sieve_id = "duality";
    std::set<u64> witness_primes;
    bool have_inter = false, all_exact = true;
    std::set<u64> inter;
    std::map<u64, SieveWitness> first_witness;
    for (auto& [p, a] : table.entries) {
        if (std::gcd(p, gamma.modulus) != 1 || gamma.eval(p) != 1) continue;
        witness_primes.insert(p);
        i128 diff = (i128)a.norm64() - (i128)p * p;
        if (diff == 0) continue;  // holds for every ell: neutral for intersection
        all_exact = false;
        u64 n = diff < 0 ? (u64)(-diff) : (u64)diff;
        Factorization f = factor(n);
        std::set<u64> s;
        for (auto [q, e] : f.factors) {
            s.insert(q);
            if (!first_witness.count(q)) first_witness.emplace(q, SieveWitness{p, 0, 0, n, f});
        }
        if (!have_inter) {
            inter = s;
            have_inter = true;
        } else {
            std::set<u64> both;
            std::set_intersection(inter.begin(), inter.end(), s.begin(), s.end(),
                                  std::inserter(both, both.begin()));
            inter = both;
        }
    }
    if (witness_primes.empty()) {
        res.report.inconclusive = true;
        return res;
    }
    res.dual_flag = all_exact;
    if (!have_inter) {
        res.report.all_primes = true;
        return res;
    }
    std::map<u64, SieveWitness> raw;
    for (u64 q : inter) raw.emplace(q, first_witness.at(q));
    apply_exclusions(res.report, std::move(raw), table.descriptor, witness_primes);
    return res;
}

SieveReport selfdual_sieve(const EigenTable& table, const std::vector<u64>& witnesses) {
    if (table.descriptor.D == 3)
        throw std::invalid_argument("selfdual_sieve: unconditional variant needs D != 3");
    if (witnesses.empty()) throw std::invalid_argument("selfdual_sieve: no witnesses");
    SieveReport rep;
    rep.sieve_id = "selfdual";
    std::set<u64> witness_primes(witnesses.begin(), witnesses.end());
    bool have_inter = false;
    std::set<u64> inter;
    std::map<u64, SieveWitness> first_witness;
    for (u64 p : witnesses) {
        if (!table.has(p)) throw std::invalid_argument("selfdual witness not in table");
        const QuadInt& a = table.at(p);
        if (a.is_real()) throw std::invalid_argument("selfdual witness needs nonreal a_p");
        QuadInt w = a.cube() - a.conj().cube();
        if (w.is_zero()) {
            rep.all_primes = true;
            continue;
        }
        u64 n = w.norm64();
        Factorization f = factor(n);
        std::set<u64> s;
        for (auto [q, e] : f.factors) {
            s.insert(q);
            if (!first_witness.count(q)) first_witness.emplace(q, SieveWitness{p, 0, 0, n, f});
        }
        if (!have_inter) {
            inter = s;
            have_inter = true;
        } else {
            std::set<u64> both;
            std::set_intersection(inter.begin(), inter.end(), s.begin(), s.end(),
                                  std::inserter(both, both.begin()));
            inter = both;
        }
    }
    if (!have_inter) {
        rep.all_primes = true;
        return rep;
    }
    std::map<u64, SieveWitness> raw;
    for (u64 q : inter) raw.emplace(q, first_witness.at(q));
    apply_exclusions(rep, std::move(raw), table.descriptor, witness_primes);
    return rep;
}

// ---- Lemma 8.3 verifier ----

Lemma83Report lemma83_verify(u64 ell, u64 sample_size) {
    if (ell < 3 || !is_prime(ell)) throw std::invalid_argument("lemma83_verify: need an odd prime");
    Lemma83Report rep;
    rep.ell = ell;
    rep.exhaustive = ell <= 13;
    const FqField* F2 = FqField::get(ell, 2);
    const FqField* F6 = FqField::get(ell, 6);
    FqEmbedding emb = FqEmbedding::make(F2, F6);
    u64 l3 = ell * ell * ell;
    u64 order_divisor = (l3 + 1) * (ell - 1);
    u64 forbidden = ell * ell * ell * ell + ell * ell + 1;
    Factorization group = factor(l3 * l3 - 1);

    auto check_pair = [&](u64 c0, u64 c1, u64 p) {
        ++rep.pairs_total;
        FqElem a = F2->make({c0, c1});
        FqElem pe = F2->from_int((i128)p);
        FqPoly f = FqPoly::from_coeffs(
            F2, {F2->from_int(-(i128)(p * p * p)), pe * a.frobenius(), -a, F2->one()});
        if (!poly_irreducible(f)) return;
        ++rep.irreducible_count;
        FqPoly g = emb.map(f);
        auto roots = poly_roots(g);
        FqElem alpha = roots.front().first;
        // alpha^{l^3+1} = p^2, so ord(alpha) | (l^3+1)(l-1)
        u64 ord = element_order(alpha, group);
        if (order_divisor % ord != 0) ++rep.divisibility_violations;
        if (ord % forbidden == 0) ++rep.multiple_violations;
    };

    if (rep.exhaustive) {
        for (u64 c0 = 0; c0 < ell; ++c0)
            for (u64 c1 = 0; c1 < ell; ++c1)
                for (u64 p = 1; p < ell; ++p) check_pair(c0, c1, p);
    } else {
        u64 state = 0x243f6a8885a308d3ull ^ ell;
        auto next = [&]() {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return state >> 11;
        };
        for (u64 i = 0; i < sample_size; ++i)
            check_pair(next() % ell, next() % ell, 1 + next() % (ell - 1));
    }
    return rep;
}

u64 geometric_conductor_bound(const std::set<u64>& bad_primes, int t, u64 modulus, u64 residue) {
    if (bad_primes != std::set<u64>{2})
        throw std::invalid_argument(
            "geometric_conductor_bound: derivation only covers bad set {2}; use modular mode");
    if (modulus < 4 || (modulus & (modulus - 1)) != 0)
        throw std::invalid_argument("geometric_conductor_bound: modulus must be a 2-power >= 4");
    if (t == 1) {
        if (residue != 1)
            throw std::invalid_argument("geometric_conductor_bound: t = 1 needs exclusion 1 mod 2^e");
        return 2 * modulus;  // order bound modulus/2, d = 4 * bound
    }
    if (t == 2) {
        if (residue != modulus - 1)
            throw std::invalid_argument("geometric_conductor_bound: t = 2 needs exclusion -1 mod 2^e");
        return 4 * modulus;  // order bound modulus, d = 4 * bound
    }
    throw std::invalid_argument("geometric_conductor_bound: t must be 1 or 2");
}

}  // namespace galrep3
