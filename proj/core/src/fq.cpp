#include "galrep3/fq.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <memory>
#include <sstream>

namespace galrep3 {

namespace {

// ---- polynomial helpers over F_ell (plain u64 coefficient vectors) ----

void zp_trim(std::vector<u64>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<u64> zp_mulmod(const std::vector<u64>& a, const std::vector<u64>& b,
                           const std::vector<u64>& mod, u64 ell) {
    // mod is monic of degree n given as full coefficient vector (c0..cn, cn=1)
    std::vector<u64> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], ell)) % ell;
        }
    }
    size_t n = mod.size() - 1;
    for (size_t i = r.size(); i-- > n;) {
        u64 coef = r[i];
        if (!coef) continue;
        r[i] = 0;
        for (size_t j = 0; j < n; ++j) {
            u64 t = mulmod(coef, mod[j], ell);
            r[i - n + j] = (r[i - n + j] + ell - t % ell) % ell;
        }
    }
    r.resize(n);
    return r;
}

std::vector<u64> zp_powmod(std::vector<u64> base, u128 e, const std::vector<u64>& mod, u64 ell) {
    std::vector<u64> r(mod.size() - 1, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = zp_mulmod(r, base, mod, ell);
        base = zp_mulmod(base, base, mod, ell);
        e >>= 1;
    }
    return r;
}

std::vector<u64> zp_gcd(std::vector<u64> a, std::vector<u64> b, u64 ell) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        // a mod b
        u64 lead_inv = powmod(b.back(), ell - 2, ell);
        while (a.size() >= b.size()) {
            u64 f = mulmod(a.back(), lead_inv, ell);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[off + i] = (a[off + i] + ell - mulmod(f, b[i], ell)) % ell;
            zp_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// f given as full vector c0..cn (monic, cn = 1), irreducibility over F_ell
bool zp_irreducible(const std::vector<u64>& f, u64 ell) {
    size_t n = f.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;
    // x^(ell^d) mod f, incrementally
    std::vector<u64> y = {0, 1};
    y.resize(n, 0);
    for (size_t d = 1; d <= n; ++d) {
        y = zp_powmod(y, ell, f, ell);
        if (d < n && n % d == 0) {
            // gcd(y - x, f) must be 1
            std::vector<u64> diff = y;
            if (diff.size() < 2) diff.resize(2, 0);
            diff[1] = (diff[1] + ell - 1) % ell;
            auto g = zp_gcd(diff, f, ell);
            if (g.size() != 1) return false;
        }
    }
    // x^(ell^n) == x
    std::vector<u64> xv(n, 0);
    if (n >= 2) xv[1] = 1;
    zp_trim(y);
    std::vector<u64> yv = y;
    zp_trim(xv);
    return yv == xv;
}

std::vector<u64> find_modulus(u64 ell, unsigned k) {
    if (k == 1) return {0};
    // candidates x^k + c_{k-1} x^{k-1} + ... + c0, enumerated in lex order on
    // (c0, ..., c_{k-1}); c0 = 0 is divisible by x, so start at (1,0,...,0).
    std::vector<u64> c(k, 0);
    c[0] = 1;
    for (;;) {
        std::vector<u64> f = c;
        f.push_back(1);
        if (zp_irreducible(f, ell)) return c;
        // increment with c[k-1] as the least significant digit
        int i = (int)k - 1;
        while (i >= 0) {
            if (++c[i] < ell) break;
            c[i] = 0;
            --i;
        }
        if (i < 0) throw std::runtime_error("find_modulus: exhausted search");
    }
}

struct FieldCache {
    std::mutex mu;
    std::map<std::pair<u64, unsigned>, std::unique_ptr<FqField>> fields;
};

FieldCache& field_cache() {
    static FieldCache c;
    return c;
}

}  // namespace

// ---- FqField ----

FqField::FqField(u64 ell, unsigned k) : ell_(ell), k_(k), mod_(find_modulus(ell, k)) {}

const FqField* FqField::get(u64 ell, unsigned k) {
    if (ell < 2 || !is_prime(ell)) throw std::invalid_argument("FqField: ell must be prime");
    if (k == 0 || k > 12) throw std::invalid_argument("FqField: degree out of range");
    auto& cache = field_cache();
    std::lock_guard<std::mutex> lock(cache.mu);
    auto key = std::make_pair(ell, k);
    auto it = cache.fields.find(key);
    if (it == cache.fields.end())
        it = cache.fields.emplace(key, std::unique_ptr<FqField>(new FqField(ell, k))).first;
    return it->second.get();
}

u128 FqField::q() const {
    u128 r = 1;
    for (unsigned i = 0; i < k_; ++i) r *= ell_;
    return r;
}

FqElem FqField::zero() const { return {this, std::vector<u64>(k_, 0)}; }

FqElem FqField::one() const {
    auto e = zero();
    e.c[0] = 1;
    return e;
}

FqElem FqField::from_int(i128 v) const {
    i128 m = (i128)ell_;
    i128 r = v % m;
    if (r < 0) r += m;
    auto e = zero();
    e.c[0] = (u64)r;
    return e;
}

FqElem FqField::gen() const {
    auto e = zero();
    if (k_ == 1)
        e.c[0] = 0;  // class of x in F_ell[x]/(x) is 0
    else
        e.c[1] = 1;
    return e;
}

FqElem FqField::make(std::vector<u64> coeffs) const {
    if (coeffs.size() != k_) throw std::invalid_argument("FqField::make: wrong length");
    for (auto& v : coeffs) v %= ell_;
    return {this, std::move(coeffs)};
}

// ---- FqElem ----

bool FqElem::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](u64 v) { return v == 0; });
}

bool FqElem::is_one() const {
    if (c[0] != 1) return false;
    return std::all_of(c.begin() + 1, c.end(), [](u64 v) { return v == 0; });
}

FqElem FqElem::operator+(const FqElem& o) const {
    assert(field == o.field);
    FqElem r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = (r.c[i] + o.c[i]) % field->ell_;
    return r;
}

FqElem FqElem::operator-(const FqElem& o) const {
    assert(field == o.field);
    FqElem r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = (r.c[i] + field->ell_ - o.c[i]) % field->ell_;
    return r;
}

FqElem FqElem::operator-() const {
    FqElem r = *this;
    for (auto& v : r.c) v = v ? field->ell_ - v : 0;
    return r;
}

FqElem FqElem::operator*(const FqElem& o) const {
    assert(field == o.field);
    u64 ell = field->ell_;
    if (field->k_ == 1) return {field, {mulmod(c[0], o.c[0], ell)}};
    std::vector<u64> mod = field->mod_;
    mod.push_back(1);
    return {field, zp_mulmod(c, o.c, mod, ell)};
}

bool FqElem::operator==(const FqElem& o) const { return field == o.field && c == o.c; }

bool FqElem::operator<(const FqElem& o) const { return c < o.c; }

FqElem FqElem::inv() const {
    if (is_zero()) throw std::domain_error("FqElem::inv: zero");
    u64 ell = field->ell_;
    if (field->k_ == 1) return {field, {powmod(c[0], ell - 2, ell)}};
    // extended Euclid between the element polynomial and the modulus over F_ell
    std::vector<u64> r0 = field->mod_;
    r0.push_back(1);
    std::vector<u64> r1 = c;
    zp_trim(r1);
    std::vector<u64> t0, t1 = {1};
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        std::vector<u64> q;
        std::vector<u64> rem = r0;
        u64 lead_inv = powmod(r1.back(), ell - 2, ell);
        if (rem.size() >= r1.size()) q.resize(rem.size() - r1.size() + 1, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            u64 f = mulmod(rem.back(), lead_inv, ell);
            size_t off = rem.size() - r1.size();
            q[off] = f;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[off + i] = (rem[off + i] + ell - mulmod(f, r1[i], ell)) % ell;
            zp_trim(rem);
            if (rem.empty()) break;
        }
        // t2 = t0 - q*t1
        std::vector<u64> qt(q.size() + t1.size(), 0);
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < t1.size(); ++j)
                qt[i + j] = (qt[i + j] + mulmod(q[i], t1[j], ell)) % ell;
        std::vector<u64> t2(std::max(t0.size(), qt.size()), 0);
        for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
        for (size_t i = 0; i < qt.size(); ++i) t2[i] = (t2[i] + ell - qt[i]) % ell;
        zp_trim(t2);
        t0 = std::move(t1);
        t1 = std::move(t2);
        r0 = std::move(r1);
        r1 = std::move(rem);
    }
    // r0 is the gcd (a nonzero constant), t0 the cofactor
    u64 ginv = powmod(r0[0], ell - 2, ell);
    std::vector<u64> out(field->k_, 0);
    for (size_t i = 0; i < t0.size(); ++i) out[i] = mulmod(t0[i], ginv, ell);
    return {field, out};
}

FqElem FqElem::pow(u128 e) const {
    FqElem r = field->one();
    FqElem b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FqElem FqElem::frobenius() const { return pow(field->ell_); }

std::string FqElem::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "]";
    return os.str();
}

u64 element_order(const FqElem& e) {
    const FqField* F = e.field;
    u128 n = F->q() - 1;
    if (n > ((u128)1 << 63)) throw std::invalid_argument("element_order: group order exceeds 2^63");
    return element_order(e, factor((u64)n));
}

u64 element_order(const FqElem& e, const Factorization& group_order) {
    if (e.is_zero()) throw std::domain_error("element_order: zero element");
    u64 o = group_order.input;
    for (auto [p, exp] : group_order.factors) {
        for (unsigned i = 0; i < exp; ++i) {
            if (o % p == 0 && e.pow(o / p).is_one())
                o /= p;
            else
                break;
        }
    }
    return o;
}

// ---- FqPoly ----

FqPoly FqPoly::from_coeffs(const FqField* f, std::vector<FqElem> coeffs) {
    return {f, std::move(coeffs)};
}

FqPoly FqPoly::from_ints(const FqField* f, const std::vector<i128>& coeffs) {
    std::vector<FqElem> v;
    v.reserve(coeffs.size());
    for (i128 x : coeffs) v.push_back(f->from_int(x));
    return {f, std::move(v)};
}

int FqPoly::degree() const {
    for (size_t i = c.size(); i-- > 0;)
        if (!c[i].is_zero()) return (int)i;
    return -1;
}

bool FqPoly::is_monic() const {
    int d = degree();
    return d >= 0 && c[d].is_one();
}

FqElem FqPoly::eval(const FqElem& x) const {
    FqElem r = field->zero();
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

namespace {

void fq_trim(std::vector<FqElem>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

using FqVec = std::vector<FqElem>;

// rem <- rem mod div (div nonzero); quotient discarded
void fq_mod_inplace(FqVec& rem, const FqVec& div) {
    FqElem lead_inv = div.back().inv();
    while (rem.size() >= div.size()) {
        FqElem f = rem.back() * lead_inv;
        size_t off = rem.size() - div.size();
        for (size_t i = 0; i < div.size(); ++i) rem[off + i] = rem[off + i] - f * div[i];
        fq_trim(rem);
        if (rem.empty()) break;
    }
}

FqVec fq_divide(FqVec num, const FqVec& div) {
    FqElem lead_inv = div.back().inv();
    FqVec q(num.size() >= div.size() ? num.size() - div.size() + 1 : 0,
            div.back().field->zero());
    while (num.size() >= div.size()) {
        FqElem f = num.back() * lead_inv;
        size_t off = num.size() - div.size();
        q[off] = f;
        for (size_t i = 0; i < div.size(); ++i) num[off + i] = num[off + i] - f * div[i];
        fq_trim(num);
        if (num.empty()) break;
    }
    return q;
}

FqVec fq_mulmod(const FqVec& a, const FqVec& b, const FqVec& mod, const FqField* F) {
    if (a.empty() || b.empty()) return {};  // zero factor: zero product
    FqVec r(a.size() + b.size() - 1, F->zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = r[i + j] + a[i] * b[j];
        }
    }
    fq_trim(r);
    if (!r.empty()) fq_mod_inplace(r, mod);
    return r;
}

FqVec fq_powmod(FqVec base, u128 e, const FqVec& mod, const FqField* F) {
    fq_trim(base);
    if (!base.empty()) fq_mod_inplace(base, mod);
    if (base.empty()) return e == 0 ? FqVec{F->one()} : FqVec{};
    FqVec r = {F->one()};
    while (e) {
        if (e & 1) r = fq_mulmod(r, base, mod, F);
        e >>= 1;
        if (e) base = fq_mulmod(base, base, mod, F);
    }
    return r;
}

FqVec fq_gcd(FqVec a, FqVec b) {
    fq_trim(a);
    fq_trim(b);
    while (!b.empty()) {
        fq_mod_inplace(a, b);
        std::swap(a, b);
    }
    if (!a.empty()) {
        FqElem inv = a.back().inv();
        for (auto& v : a) v = v * inv;
    }
    return a;
}

// x^q mod f, via k successive ell-th powers
FqVec fq_xq_mod(const FqVec& f, const FqField* F) {
    FqVec y = {F->zero(), F->one()};
    fq_mod_inplace(y, f);
    for (unsigned i = 0; i < F->k(); ++i) y = fq_powmod(y, F->ell(), f, F);
    return y;
}

struct SplitRng {
    u64 state;
    u64 next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 11;
    }
};

void cz_split(const FqVec& g, const FqField* F, SplitRng& rng, std::vector<FqElem>& roots) {
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        // monic x + c0
        roots.push_back(-(g[0] * g[1].inv()));
        return;
    }
    u128 half = (F->q() - 1) / 2;
    for (;;) {
        // h = (x + b)^((q-1)/2) - 1 mod g
        FqVec base(2, F->zero());
        std::vector<u64> bc(F->k());
        for (auto& v : bc) v = rng.next() % F->ell();
        base[0] = F->make(bc);
        base[1] = F->one();
        FqVec h = fq_powmod(base, half, g, F);
        if (h.empty()) h = {F->zero()};
        h[0] = h[0] - F->one();
        FqVec d = fq_gcd(h, g);
        if (d.size() > 1 && d.size() < g.size()) {
            cz_split(d, F, rng, roots);
            cz_split(fq_divide(g, d), F, rng, roots);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FqElem, unsigned>> poly_roots(const FqPoly& fin) {
    if (!fin.is_monic()) throw std::invalid_argument("poly_roots: polynomial must be monic");
    const FqField* F = fin.field;
    FqVec f = fin.c;
    fq_trim(f);
    std::vector<FqElem> roots;
    if (f.size() > 1) {
        FqVec xq = fq_xq_mod(f, F);
        // xq - x
        FqVec diff = xq;
        if (diff.size() < 2) diff.resize(2, F->zero());
        diff[1] = diff[1] - F->one();
        FqVec g = fq_gcd(diff, f);
        SplitRng rng{0x9e3779b97f4a7c15ull ^ (F->ell() * 1315423911ull + F->k())};
        cz_split(g, F, rng, roots);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<std::pair<FqElem, unsigned>> out;
    for (auto& r : roots) {
        // multiplicity by repeated division by (x - r)
        FqVec lin = {-r, F->one()};
        FqVec cur = f;
        unsigned mult = 0;
        for (;;) {
            FqVec rem = cur;
            fq_mod_inplace(rem, lin);
            if (!rem.empty()) break;
            cur = fq_divide(cur, lin);
            ++mult;
            if (cur.size() <= 1) break;
        }
        out.push_back({r, mult});
    }
    return out;
}

bool poly_irreducible(const FqPoly& fin) {
    if (!fin.is_monic()) throw std::invalid_argument("poly_irreducible: must be monic");
    const FqField* F = fin.field;
    FqVec f = fin.c;
    fq_trim(f);
    size_t n = f.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;
    FqVec y = {F->zero(), F->one()};
    fq_mod_inplace(y, f);
    for (size_t d = 1; d <= n; ++d) {
        // y <- y^q
        for (unsigned i = 0; i < F->k(); ++i) y = fq_powmod(y, F->ell(), f, F);
        if (d < n && n % d == 0) {
            FqVec diff = y;
            if (diff.size() < 2) diff.resize(2, F->zero());
            diff[1] = diff[1] - F->one();
            if (fq_gcd(diff, f).size() != 1) return false;
        }
        if (d == n) {
            FqVec xv = {F->zero(), F->one()};
            fq_mod_inplace(xv, f);
            FqVec yy = y;
            fq_trim(yy);
            fq_trim(xv);
            return yy == xv;
        }
    }
    return false;
}

bool poly_squarefree(const FqPoly& fin) {
    const FqField* F = fin.field;
    FqVec f = fin.c;
    fq_trim(f);
    if (f.size() <= 1) return true;
    FqVec df(f.size() - 1, F->zero());
    for (size_t i = 1; i < f.size(); ++i) df[i - 1] = F->from_int((i128)i) * f[i];
    fq_trim(df);
    if (df.empty()) return false;  // derivative zero: p-th power
    return fq_gcd(f, df).size() == 1;
}

// ---- embeddings ----

FqEmbedding FqEmbedding::make(const FqField* from, const FqField* to) {
    if (from->ell() != to->ell() || to->k() % from->k() != 0)
        throw std::invalid_argument("FqEmbedding: incompatible fields");
    if (from->k() == 1) return {from, to, to->zero()};
    std::vector<FqElem> mc;
    for (u64 v : from->modulus()) mc.push_back(to->from_int((i128)v));
    mc.push_back(to->one());
    auto roots = poly_roots(FqPoly::from_coeffs(to, std::move(mc)));
    if (roots.empty()) throw std::runtime_error("FqEmbedding: modulus has no root upstairs");
    return {from, to, roots.front().first};
}

FqElem FqEmbedding::map(const FqElem& e) const {
    FqElem r = to->zero();
    for (size_t i = e.c.size(); i-- > 0;) r = r * theta + to->from_int((i128)e.c[i]);
    return r;
}

FqPoly FqEmbedding::map(const FqPoly& f) const {
    std::vector<FqElem> out;
    out.reserve(f.c.size());
    for (auto& e : f.c) out.push_back(map(e));
    return {to, std::move(out)};
}

// ---- reduction of quadratic integers ----

FqElem reduce_quadint(const QuadInt& q, u64 ell, bool swap_embedding) {
    SplittingType s = splitting(q.D, ell);
    if (s == SplittingType::Ramified)
        throw std::invalid_argument("reduce_quadint: ell ramified in Q(sqrt(-D))");
    if (s == SplittingType::Split) {
        const FqField* F = FqField::get(ell, 1);
        i64 r = sqrt_mod(-(i64)(q.D % ell), ell);
        if (swap_embedding && r != 0) r = (i64)ell - r;
        return F->from_int(q.x) + F->from_int(q.y) * F->from_int(r);
    }
    const FqField* F = FqField::get(ell, 2);
    // fixed square root of -D: first root of z^2 + D by coefficient order
    auto roots = poly_roots(FqPoly::from_ints(F, {(i128)(q.D % ell), 0, 1}));
    FqElem sroot = roots.front().first;
    if (swap_embedding) sroot = -sroot;
    return F->from_int(q.x) + F->from_int(q.y) * sroot;
}

}  // namespace galrep3
