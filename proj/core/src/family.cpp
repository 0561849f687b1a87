#include "galrep3/family.hpp"

#include <fstream>
#include <sstream>

namespace galrep3 {

namespace {

bool squarefree(u64 n) {
    for (auto [p, e] : factor(n).factors)
        if (e > 1) return false;
    return true;
}

}  // namespace

void FamilyDescriptor::validate() const {
    if (D == 0 || !squarefree(D)) throw std::invalid_argument("descriptor: D must be positive squarefree");
    for (u64 p : bad_primes)
        if (!is_prime(p)) throw std::invalid_argument("descriptor: bad prime " + std::to_string(p) + " is not prime");
    if (mode == ConductorMode::Modular && level < 1)
        throw std::invalid_argument("descriptor: modular mode requires level >= 1");
    if (mode == ConductorMode::Geometric && epsilon_conductor_bound < 1)
        throw std::invalid_argument("descriptor: conductor bound must be >= 1");
}

u64 FamilyDescriptor::n_prime() const {
    u64 n = 1;
    for (u64 p : bad_primes) n *= (p == 3 ? 9 : p);
    return n;
}

u64 FamilyDescriptor::quadratic_modulus() const {
    u64 n = 1;
    for (u64 p : bad_primes) n *= (p == 2 ? 8 : p);
    return n;
}

EigenTable parse_table(std::istream& in) {
    EigenTable t;
    bool saw_mode = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        auto want_u64 = [&](const char* what) {
            i64 v;
            if (!(ls >> v) || v < 0) throw parse_error(lineno, std::string("expected nonnegative integer for ") + what);
            return (u64)v;
        };
        if (key == "family") {
            if (!(ls >> t.descriptor.label)) throw parse_error(lineno, "missing family label");
        } else if (key == "field-D") {
            t.descriptor.D = want_u64("field-D");
        } else if (key == "level") {
            t.descriptor.level = want_u64("level");
        } else if (key == "bad") {
            u64 p;
            while (ls >> p) {
                if (!is_prime(p)) throw parse_error(lineno, "bad prime " + std::to_string(p) + " is not prime");
                t.descriptor.bad_primes.insert(p);
            }
        } else if (key == "mode") {
            std::string m;
            if (!(ls >> m)) throw parse_error(lineno, "missing mode");
            saw_mode = true;
            if (m == "modular") {
                t.descriptor.mode = ConductorMode::Modular;
            } else if (m == "geometric") {
                t.descriptor.mode = ConductorMode::Geometric;
                t.descriptor.epsilon_conductor_bound = want_u64("conductor bound");
                std::string kw;
                if (ls >> kw) {
                    if (kw != "exclude") throw parse_error(lineno, "expected 'exclude'");
                    std::string tok;
                    while (ls >> tok) {
                        auto colon = tok.find(':');
                        if (colon == std::string::npos) throw parse_error(lineno, "expected m:r congruence");
                        u64 m2 = std::stoull(tok.substr(0, colon));
                        u64 r2 = std::stoull(tok.substr(colon + 1));
                        t.descriptor.excluded_congruences.push_back({m2, r2});
                    }
                }
            } else {
                throw parse_error(lineno, "unknown mode " + m);
            }
        } else if (key == "hodge-bound") {
            t.descriptor.hodge_multiplicity_bound = (unsigned)want_u64("hodge-bound");
        } else if (key == "ap") {
            i64 p, x, y;
            if (!(ls >> p >> x >> y)) throw parse_error(lineno, "expected: ap <p> <x> <y>");
            if (p < 2 || !is_prime((u64)p)) throw parse_error(lineno, "ap prime " + std::to_string(p) + " is not prime");
            u64 up = (u64)p;
            if (t.entries.count(up)) throw parse_error(lineno, "duplicate entry for p = " + std::to_string(p));
            if (t.descriptor.level != 0 && t.descriptor.level % up == 0)
                throw parse_error(lineno, "p = " + std::to_string(p) + " divides the level");
            if (t.descriptor.bad_primes.count(up))
                throw parse_error(lineno, "p = " + std::to_string(p) + " is a bad prime");
            QuadInt a{x, y, t.descriptor.D};
            // Ramanujan bound |a_p| <= 3p
            u128 n = a.norm();
            if (n > (u128)9 * up * up)
                throw parse_error(lineno, "entry at p = " + std::to_string(p) +
                                              " violates the bound norm(a_p) <= 9p^2");
            t.entries.emplace(up, a);
        } else {
            throw parse_error(lineno, "unknown directive " + key);
        }
    }
    if (!saw_mode) throw parse_error(lineno, "missing mode line");
    t.descriptor.validate();
    return t;
}

EigenTable parse_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_table(in);
}

std::string serialize_table(const EigenTable& t) {
    std::ostringstream os;
    const auto& d = t.descriptor;
    os << "family " << d.label << "\n";
    os << "field-D " << d.D << "\n";
    os << "level " << d.level << "\n";
    if (!d.bad_primes.empty()) {
        os << "bad";
        for (u64 p : d.bad_primes) os << " " << p;
        os << "\n";
    }
    if (d.mode == ConductorMode::Modular) {
        os << "mode modular\n";
    } else {
        os << "mode geometric " << d.epsilon_conductor_bound;
        if (!d.excluded_congruences.empty()) {
            os << " exclude";
            for (auto [m, r] : d.excluded_congruences) os << " " << m << ":" << r;
        }
        os << "\n";
    }
    if (d.hodge_multiplicity_bound != 2) os << "hodge-bound " << d.hodge_multiplicity_bound << "\n";
    for (auto& [p, a] : t.entries)
        os << "ap " << p << " " << (long long)a.x << " " << (long long)a.y << "\n";
    return os.str();
}

FrobCharPoly charpoly(u64 p, const QuadInt& a) {
    FrobCharPoly f;
    f.p = p;
    f.a = a;
    f.middle = QuadInt{(i128)p, 0, a.D} * a.conj();
    f.constant = -(i128)p * p * p;
    return f;
}

FqPoly residual_charpoly(u64 p, const QuadInt& a, u64 ell, bool swap_embedding) {
    if (ell == 2 || ell == p) throw std::invalid_argument("residual_charpoly: ell must be odd and distinct from p");
    if (splitting(a.D, ell) == SplittingType::Ramified)
        throw std::invalid_argument("residual_charpoly: ell ramified");
    FrobCharPoly cp = charpoly(p, a);
    FqElem c2 = reduce_quadint(-cp.a, ell, swap_embedding);
    FqElem c1 = reduce_quadint(cp.middle, ell, swap_embedding);
    const FqField* F = c1.field;
    FqElem c0 = F->from_int(cp.constant);
    return FqPoly::from_coeffs(F, {c0, c1, c2, F->one()});
}

}  // namespace galrep3
