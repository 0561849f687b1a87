#include "galrep3/catalog.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace galrep3 {

namespace {

const std::pair<MitchellCase, const char*> kCaseNames[] = {
    {MitchellCase::A, "a"},       {MitchellCase::B, "b"},
    {MitchellCase::C, "c"},       {MitchellCase::D, "d"},
    {MitchellCase::E, "e"},       {MitchellCase::F, "f"},
    {MitchellCase::G, "g"},       {MitchellCase::H216, "h216"},
    {MitchellCase::H72, "h72"},   {MitchellCase::H36, "h36"},
    {MitchellCase::I, "i"},       {MitchellCase::J, "j"},
    {MitchellCase::X2A6, "x2A6"}, {MitchellCase::XA7, "xA7"},
};

u128 ipow(u128 b, int e) {
    u128 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

u128 gcd3(u128 n) { return n % 3 == 0 ? 3 : 1; }

}  // namespace

const char* case_name(MitchellCase c) {
    for (auto& [id, name] : kCaseNames)
        if (id == c) return name;
    return "?";
}

std::optional<MitchellCase> case_from_name(const std::string& s) {
    for (auto& [id, name] : kCaseNames)
        if (s == name) return id;
    return std::nullopt;
}

bool case_is_exceptional(MitchellCase c) {
    switch (c) {
        case MitchellCase::H216:
        case MitchellCase::H72:
        case MitchellCase::H36:
        case MitchellCase::I:
        case MitchellCase::J:
        case MitchellCase::X2A6:
        case MitchellCase::XA7:
            return true;
        default:
            return false;
    }
}

bool case_exists(MitchellCase c, u64 ell, int t) {
    if (t != 1 && t != 2) throw std::invalid_argument("case_exists: t must be 1 or 2");
    u128 q = ipow(ell, t);
    switch (c) {
        case MitchellCase::A:
        case MitchellCase::B:
        case MitchellCase::C:
        case MitchellCase::D:
        case MitchellCase::E:
        case MitchellCase::F:
            return true;
        case MitchellCase::G:
            return t == 2;
        case MitchellCase::H216:
            return q % 9 == 1;
        case MitchellCase::H72:
        case MitchellCase::H36:
            return q % 9 == 4 || q % 9 == 7;
        case MitchellCase::I:
            return t == 2 || ell % 7 == 0 || ell % 7 == 1 || ell % 7 == 2 || ell % 7 == 4;
        case MitchellCase::J:
            return t == 2 || ell % 15 == 1 || ell % 15 == 4;
        case MitchellCase::X2A6:
        case MitchellCase::XA7:
            return ell == 5 && t == 2;
    }
    return false;
}

u128 case_order(MitchellCase c, u64 ell, int t, int k) {
    if (t != 1 && t != 2) throw std::invalid_argument("case_order: t must be 1 or 2");
    u128 q = ipow(ell, t);
    switch (c) {
        case MitchellCase::A:
        case MitchellCase::B:
            return (q + 1) * ipow(q, 3) * (q - 1) * (q - 1) / gcd3(q - 1);
        case MitchellCase::C:
            return 6 * (q - 1) * (q - 1) / gcd3(q - 1);
        case MitchellCase::D:
            return 3 * (q * q + q + 1) / gcd3(q - 1);
        case MitchellCase::E:
            return (q + 1) * q * (q - 1);
        case MitchellCase::F: {
            if (k < 1 || k > t) throw std::invalid_argument("case_order: case f needs 1 <= k <= t");
            u128 qk = ipow(ell, k);
            return (qk * qk + qk + 1) * (qk + 1) * ipow(qk, 3) * (qk - 1) * (qk - 1) / gcd3(qk - 1);
        }
        case MitchellCase::G: {
            if (t != 2) throw std::invalid_argument("case_order: case g needs t = 2");
            u128 p = ell;
            return (p * p - p + 1) * (p + 1) * (p + 1) * ipow(p, 3) * (p - 1) / gcd3(p + 1);
        }
        case MitchellCase::H216:
            return 216;
        case MitchellCase::H72:
            return 72;
        case MitchellCase::H36:
            return 36;
        case MitchellCase::I:
            return 168;
        case MitchellCase::J:
            return 360;
        case MitchellCase::X2A6:
            return 720;
        case MitchellCase::XA7:
            return 2520;
    }
    throw std::invalid_argument("case_order: unknown case");
}

// ---- inertia patterns ----

std::vector<InertiaPattern> inertia_patterns(unsigned hodge_bound) {
    std::vector<InertiaPattern> all = {
        {1, "(1, chi, chi^2)", {0, 1, 2}, [](u64 l) { return l - 1; }},
        {2, "(1, psi2^(2+l), psi2^(1+2l))", {0, 1, 2}, [](u64 l) { return l + 1; }},
        {3, "(chi, psi2^2, psi2^(2l))", {0, 1, 2}, [](u64 l) { return l + 1; }},
        {4, "(chi^2, psi2, psi2^l)", {0, 1, 2}, [](u64 l) { return l + 1; }},
        {5, "(psi3^(1+2l), psi3^(l+2l^2), psi3^(l^2+2))", {0, 1, 2},
         [](u64 l) { return l * l + l + 1; }},
        {6, "(chi, chi, chi)", {1, 1, 1}, [](u64) { return u64{1}; }},
    };
    std::vector<InertiaPattern> out;
    for (auto& p : all) {
        unsigned worst = 0;
        for (int w = 0; w <= 2; ++w) {
            unsigned cnt = 0;
            for (int v : p.weights)
                if (v == w) ++cnt;
            worst = std::max(worst, cnt);
        }
        if (worst <= hodge_bound) out.push_back(p);
    }
    return out;
}

std::set<u64> projective_inertia_orders(u64 ell) {
    return {ell - 1, ell + 1, ell * ell + ell + 1};
}

// ---- projective matrices ----

ProjMatrix ProjMatrix::from_entries(const FqField* F, const std::array<FqElem, 9>& ent) {
    ProjMatrix r;
    r.field = F;
    r.m = ent;
    for (auto& e : r.m)
        if (!e.is_zero()) {
            FqElem s = e.inv();
            for (auto& x : r.m) x = x * s;
            if (r.det().is_zero()) throw std::invalid_argument("ProjMatrix: singular matrix");
            return r;
        }
    throw std::invalid_argument("ProjMatrix: zero matrix");
}

ProjMatrix ProjMatrix::from_ints(const FqField* F, const std::array<i128, 9>& ent) {
    std::array<FqElem, 9> e;
    for (int i = 0; i < 9; ++i) e[i] = F->from_int(ent[i]);
    return from_entries(F, e);
}

ProjMatrix ProjMatrix::operator*(const ProjMatrix& o) const {
    std::array<FqElem, 9> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            FqElem s = field->zero();
            for (int t = 0; t < 3; ++t) s = s + m[3 * i + t] * o.m[3 * t + j];
            r[3 * i + j] = s;
        }
    return from_entries(field, r);
}

bool ProjMatrix::operator==(const ProjMatrix& o) const {
    for (int i = 0; i < 9; ++i)
        if (!(m[i] == o.m[i])) return false;
    return true;
}

bool ProjMatrix::operator<(const ProjMatrix& o) const {
    for (int i = 0; i < 9; ++i) {
        if (m[i] < o.m[i]) return true;
        if (!(m[i] == o.m[i])) return false;
    }
    return false;
}

bool ProjMatrix::is_identity() const {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const FqElem& e = m[3 * i + j];
            if (i == j ? !e.is_one() : !e.is_zero()) return false;
        }
    return true;
}

FqElem ProjMatrix::det() const {
    auto& a = m;
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
}

ProjMatrix ProjMatrix::inverse() const {
    auto& a = m;
    std::array<FqElem, 9> adj = {
        a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8], a[1] * a[5] - a[2] * a[4],
        a[5] * a[6] - a[3] * a[8], a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
        a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7], a[0] * a[4] - a[1] * a[3],
    };
    return from_entries(field, adj);  // projective, so the 1/det factor is irrelevant
}

void ProjMatrix::charpoly(FqElem& A, FqElem& B, FqElem& C) const {
    auto& a = m;
    A = a[0] + a[4] + a[8];
    B = (a[0] * a[4] - a[1] * a[3]) + (a[0] * a[8] - a[2] * a[6]) + (a[4] * a[8] - a[5] * a[7]);
    C = det();
}

u64 ProjMatrix::projective_order(u64 cap) const {
    ProjMatrix p = *this;
    for (u64 n = 1; n <= cap; ++n) {
        if (p.is_identity()) return n;
        p = p * *this;
    }
    throw std::runtime_error("projective_order: cap exceeded");
}

ProjMatrix conic_stabilizer(const FqElem& k, const FqElem& alpha, const FqElem& beta,
                            const FqElem& gamma, const FqElem& delta) {
    const FqField* F = k.field;
    FqElem kk = k, a = alpha, b = beta, c = gamma, d = delta;
    FqPoly sq = FqPoly::from_coeffs(F, {-k, F->zero(), F->one()});
    auto roots = poly_roots(sq);
    FqElem s;
    if (!roots.empty()) {
        s = roots.front().first;
    } else {
        const FqField* E = FqField::get(F->ell(), 2 * F->k());
        FqEmbedding emb = FqEmbedding::make(F, E);
        kk = emb.map(k), a = emb.map(alpha), b = emb.map(beta);
        c = emb.map(gamma), d = emb.map(delta);
        FqPoly sq2 = FqPoly::from_coeffs(E, {-kk, E->zero(), E->one()});
        auto roots2 = poly_roots(sq2);
        if (roots2.empty()) throw std::runtime_error("conic_stabilizer: no square root of k");
        s = roots2.front().first;
    }
    // Points of the conic y^2 = k x z are (u^2 : s uv : v^2); the fractional
    // linear action (u : v) -> (au + bv : cu + dv) becomes the matrix below
    // (scaled through by s to clear denominators).
    const FqField* G = s.field;
    FqElem two = G->from_int(2);
    std::array<FqElem, 9> ent = {
        s * a * a,  two * a * b,          s * b * b,  //
        kk * a * c, s * (a * d + b * c),  kk * b * d,
        s * c * c,  two * c * d,          s * d * d,
    };
    return ProjMatrix::from_entries(G, ent);
}

ClosureResult group_closure(const std::vector<ProjMatrix>& generators, size_t cap) {
    if (generators.empty()) throw std::invalid_argument("group_closure: no generators");
    ClosureResult res;
    std::set<ProjMatrix> seen;
    std::deque<ProjMatrix> queue;
    std::array<FqElem, 9> ident;
    const FqField* F = generators.front().field;
    for (int i = 0; i < 9; ++i) ident[i] = (i % 4 == 0) ? F->one() : F->zero();
    ProjMatrix id = ProjMatrix::from_entries(F, ident);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
        ProjMatrix cur = queue.front();
        queue.pop_front();
        for (const auto& g : generators) {
            ProjMatrix nxt = cur * g;
            if (seen.insert(nxt).second) {
                if (seen.size() > cap) throw std::runtime_error("group_closure: cap exceeded");
                queue.push_back(nxt);
            }
        }
    }
    res.elements.assign(seen.begin(), seen.end());
    for (const auto& g : res.elements) res.element_orders.insert(g.projective_order(cap));
    return res;
}

// ---- spectra ----

bool SpectrumEntry::admits(u64 ell, int t, Admissibility mode) const {
    if (id == MitchellCase::X2A6 || id == MitchellCase::XA7) {
        if (!(ell == 5 && t == 2)) return false;
    } else if (mode == Admissibility::Strict && !case_exists(id, ell, t)) {
        return false;
    }
    if (ell_condition) {
        auto& [mod, residues] = *ell_condition;
        if (!residues.count(ell % mod)) return false;
    }
    return true;
}

u64 SpectraPreset::max_order() const {
    u64 m = 1;
    for (auto& e : entries)
        if (!e.orders.empty()) m = std::max(m, *e.orders.rbegin());
    return m;
}

namespace {

std::vector<SpectrumEntry> common_entries() {
    return {
        {MitchellCase::H216, {1, 2, 3, 4, 6}, SpectrumProvenance::Derived, std::nullopt,
         "closure oracle over the normalizer of the 3x3 Heisenberg image"},
        {MitchellCase::I, {1, 2, 3, 4, 7}, SpectrumProvenance::Derived, std::nullopt,
         "exhaustive 2x2 enumeration oracle"},
        {MitchellCase::J, {1, 2, 3, 4, 5}, SpectrumProvenance::Derived, std::nullopt,
         "permutation enumeration oracle"},
        {MitchellCase::X2A6, {1, 2, 3, 4, 5}, SpectrumProvenance::Config, std::nullopt, ""},
        {MitchellCase::XA7, {1, 2, 3, 4, 5, 6, 7}, SpectrumProvenance::Config, std::nullopt, ""},
    };
}

SpectraPreset make_split_d1() {
    SpectraPreset p;
    p.name = "paper-split-D1";
    p.t_mode = 1;
    p.admissibility = Admissibility::Conservative;
    p.entries = common_entries();
    p.entries.push_back({MitchellCase::H216, {1, 2, 3, 4, 6, 9, 12}, SpectrumProvenance::Config,
                         std::nullopt, "published candidate set needs an order-12 element"});
    return p;
}

SpectraPreset make_inert_d1() {
    SpectraPreset p;
    p.name = "paper-inert-D1";
    p.t_mode = 2;
    p.admissibility = Admissibility::Conservative;
    p.entries = common_entries();
    p.entries.push_back({MitchellCase::H216, {1, 2, 3, 4, 6, 9, 12, 18}, SpectrumProvenance::Config,
                         std::nullopt, "published candidate set needs an order-18 element"});
    return p;
}

SpectraPreset make_88() {
    SpectraPreset p;
    p.name = "paper-88";
    p.t_mode = 0;
    p.admissibility = Admissibility::Conservative;
    p.entries = common_entries();
    p.entries.push_back({MitchellCase::H216, {1, 2, 3, 4, 6, 9, 12}, SpectrumProvenance::Config,
                         std::nullopt, ""});
    p.entries.push_back({MitchellCase::H216, {18}, SpectrumProvenance::Config,
                         std::make_pair(u64{9}, std::set<u64>{1}),
                         "order-18 elements admitted only when 9 | ell - 1"});
    return p;
}

}  // namespace

const SpectraPreset& preset_conservative_default() {
    static SpectraPreset p = [] {
        SpectraPreset q;
        q.name = "conservative-default";
        q.t_mode = 0;
        q.admissibility = Admissibility::Conservative;
        q.entries = common_entries();
        q.entries.push_back({MitchellCase::H216, {1, 2, 3, 4, 6, 9, 12, 18},
                             SpectrumProvenance::Config, std::nullopt, ""});
        return q;
    }();
    return p;
}

const SpectraPreset& preset_paper_split_d1() {
    static SpectraPreset p = make_split_d1();
    return p;
}

const SpectraPreset& preset_paper_inert_d1() {
    static SpectraPreset p = make_inert_d1();
    return p;
}

const SpectraPreset& preset_paper_88() {
    static SpectraPreset p = make_88();
    return p;
}

std::vector<const SpectraPreset*> builtin_presets() {
    return {&preset_paper_split_d1(), &preset_paper_inert_d1(), &preset_paper_88()};
}

const SpectraPreset* find_builtin_preset(const std::string& name) {
    for (const SpectraPreset* p : builtin_presets())
        if (p->name == name) return p;
    return nullptr;
}

std::vector<SpectraPreset> parse_spectra(std::istream& in) {
    std::vector<SpectraPreset> out;
    SpectraPreset* cur = nullptr;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("spectra line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "preset") {
            out.emplace_back();
            cur = &out.back();
            if (!(ls >> cur->name)) fail("missing preset name");
        } else if (key == "t") {
            if (!cur) fail("'t' outside a preset");
            std::string v;
            ls >> v;
            if (v == "1")
                cur->t_mode = 1;
            else if (v == "2")
                cur->t_mode = 2;
            else if (v == "mixed")
                cur->t_mode = 0;
            else
                fail("t must be 1, 2, or mixed");
        } else if (key == "admissibility") {
            if (!cur) fail("'admissibility' outside a preset");
            std::string v;
            ls >> v;
            if (v == "strict")
                cur->admissibility = Admissibility::Strict;
            else if (v == "conservative")
                cur->admissibility = Admissibility::Conservative;
            else
                fail("admissibility must be strict or conservative");
        } else if (key == "case") {
            if (!cur) fail("'case' outside a preset");
            SpectrumEntry e;
            std::string cname, prov, tok;
            if (!(ls >> cname >> prov >> tok)) fail("expected: case <id> <provenance> orders ...");
            auto id = case_from_name(cname);
            if (!id) fail("unknown case id " + cname);
            e.id = *id;
            if (prov == "derived")
                e.provenance = SpectrumProvenance::Derived;
            else if (prov == "config")
                e.provenance = SpectrumProvenance::Config;
            else
                fail("provenance must be derived or config");
            if (tok != "orders") fail("expected 'orders'");
            while (ls >> tok) {
                if (tok == "cond") {
                    std::string cond;
                    if (!(ls >> cond)) fail("missing condition after 'cond'");
                    auto colon = cond.find(':');
                    if (colon == std::string::npos) fail("condition must be m:r1,r2,...");
                    u64 mod = std::stoull(cond.substr(0, colon));
                    std::set<u64> residues;
                    std::istringstream rs(cond.substr(colon + 1));
                    std::string r;
                    while (std::getline(rs, r, ',')) residues.insert(std::stoull(r));
                    if (mod == 0 || residues.empty()) fail("bad condition");
                    e.ell_condition = {mod, residues};
                } else if (tok == "note") {
                    std::string rest;
                    std::getline(ls, rest);
                    size_t start = rest.find_first_not_of(' ');
                    e.note = start == std::string::npos ? "" : rest.substr(start);
                } else {
                    e.orders.insert(std::stoull(tok));
                }
            }
            if (e.orders.empty()) fail("empty order set");
            cur->entries.push_back(e);
        } else {
            fail("unknown directive " + key);
        }
    }
    return out;
}

std::string serialize_spectra(const std::vector<SpectraPreset>& presets) {
    std::ostringstream os;
    for (const auto& p : presets) {
        os << "preset " << p.name << "\n";
        os << "t " << (p.t_mode == 0 ? std::string("mixed") : std::to_string(p.t_mode)) << "\n";
        os << "admissibility "
           << (p.admissibility == Admissibility::Strict ? "strict" : "conservative") << "\n";
        for (const auto& e : p.entries) {
            os << "case " << case_name(e.id) << " "
               << (e.provenance == SpectrumProvenance::Derived ? "derived" : "config") << " orders";
            for (u64 o : e.orders) os << " " << o;
            if (e.ell_condition) {
                os << " cond " << e.ell_condition->first << ":";
                bool first = true;
                for (u64 r : e.ell_condition->second) {
                    if (!first) os << ",";
                    os << r;
                    first = false;
                }
            }
            if (!e.note.empty()) os << " note " << e.note;
            os << "\n";
        }
        os << "\n";
    }
    return os.str();
}

bool exceptional_candidate_at(const SpectraPreset& preset, u64 ell, int t) {
    std::set<u64> targets = projective_inertia_orders(ell);
    for (const auto& e : preset.entries) {
        if (!e.admits(ell, t, preset.admissibility)) continue;
        for (u64 o : targets)
            if (e.orders.count(o)) return true;
    }
    return false;
}

std::set<u64> exceptional_candidates(const SpectraPreset& preset, u64 D,
                                     const std::function<bool(u64)>& filter) {
    std::set<u64> out;
    u64 bound = preset.max_order() + 1;
    for (u64 ell = 5; ell <= bound; ++ell) {
        if (!is_prime(ell)) continue;
        if (filter && !filter(ell)) continue;
        std::vector<int> ts;
        if (preset.t_mode == 1 || preset.t_mode == 2) {
            ts = {preset.t_mode};
        } else {
            switch (splitting(D, ell)) {
                case SplittingType::Split: ts = {1}; break;
                case SplittingType::Inert: ts = {2}; break;
                case SplittingType::Ramified: ts = {1, 2}; break;
            }
        }
        for (int t : ts)
            if (exceptional_candidate_at(preset, ell, t)) {
                out.insert(ell);
                break;
            }
    }
    return out;
}

std::vector<std::pair<MitchellCase, u128>> admissible_exceptional_orders(
    const SpectraPreset& preset, u64 ell, int t) {
    std::vector<std::pair<MitchellCase, u128>> out;
    std::set<MitchellCase> done;
    for (const auto& e : preset.entries) {
        if (!case_is_exceptional(e.id)) continue;
        if (!e.admits(ell, t, preset.admissibility)) continue;
        if (!done.insert(e.id).second) continue;
        out.push_back({e.id, case_order(e.id, ell, t)});
    }
    return out;
}

}  // namespace galrep3
