#include "diodef/modpoly.hpp"
#include "diodef/errors.hpp"

#include <algorithm>
#include <cassert>

namespace diodef {

namespace {

inline uint64_t addm(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint64_t subm(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
inline uint64_t mulm(uint64_t a, uint64_t b, uint64_t p) {
    return uint64_t((__uint128_t)a * b % p);
}
uint64_t powm(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}
inline uint64_t invm(uint64_t a, uint64_t p) { return powm(a % p, p - 2, p); }

} // namespace

void fp_trim(FpPoly &f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_reduce(const ZPoly &f, uint64_t p) {
    FpPoly r(f.size());
    Int P(static_cast<unsigned long>(p));
    for (size_t i = 0; i < f.size(); ++i) {
        Int m = f[i] % P;
        if (m < 0) m += P;
        r[i] = m.get_ui();
    }
    fp_trim(r);
    return r;
}

FpPoly fp_add(const FpPoly &a, const FpPoly &b, uint64_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = addm(x, y, p);
    }
    fp_trim(r);
    return r;
}

FpPoly fp_sub(const FpPoly &a, const FpPoly &b, uint64_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = subm(x, y, p);
    }
    fp_trim(r);
    return r;
}

FpPoly fp_mul(const FpPoly &a, const FpPoly &b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
    }
    fp_trim(r);
    return r;
}

std::pair<FpPoly, FpPoly> fp_divrem(const FpPoly &a, const FpPoly &m, uint64_t p) {
    assert(!m.empty());
    FpPoly r = a, q;
    if (fp_deg(r) >= fp_deg(m)) q.assign(r.size() - m.size() + 1, 0);
    uint64_t inv_lead = invm(m.back(), p);
    while (fp_deg(r) >= fp_deg(m)) {
        size_t shift = r.size() - m.size();
        uint64_t c = mulm(r.back(), inv_lead, p);
        q[shift] = c;
        for (size_t i = 0; i < m.size(); ++i)
            r[shift + i] = subm(r[shift + i], mulm(c, m[i], p), p);
        fp_trim(r);
    }
    fp_trim(q);
    return {q, r};
}

FpPoly fp_mod(const FpPoly &a, const FpPoly &m, uint64_t p) { return fp_divrem(a, m, p).second; }

FpPoly fp_monic(const FpPoly &a, uint64_t p) {
    if (a.empty()) return a;
    FpPoly r = a;
    uint64_t inv = invm(r.back(), p);
    for (auto &c : r) c = mulm(c, inv, p);
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p) {
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : fp_monic(a, p);
}

void fp_xgcd(const FpPoly &a, const FpPoly &b, FpPoly &g, FpPoly &s, FpPoly &t, uint64_t p) {
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        auto [q, r] = fp_divrem(r0, r1, p);
        FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
        FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.empty()) {
        uint64_t inv = invm(r0.back(), p);
        for (auto &c : r0) c = mulm(c, inv, p);
        for (auto &c : s0) c = mulm(c, inv, p);
        for (auto &c : t0) c = mulm(c, inv, p);
    }
    g = r0; s = s0; t = t0;
}

FpPoly fp_powmod(const FpPoly &base, const Int &e, const FpPoly &m, uint64_t p) {
    FpPoly r = {1}, b = fp_mod(base, m, p);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = fp_mod(fp_mul(r, b, p), m, p);
        b = fp_mod(fp_mul(b, b, p), m, p);
        k >>= 1;
    }
    return r;
}

FpPoly fp_deriv(const FpPoly &a, uint64_t p) {
    FpPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(mulm(a[i], i % p, p));
    fp_trim(r);
    return r;
}

uint64_t fp_eval(const FpPoly &f, uint64_t x, uint64_t p) {
    uint64_t r = 0;
    for (size_t i = f.size(); i-- > 0;) r = addm(mulm(r, x, p), f[i], p);
    return r;
}

bool fp_squarefree(const FpPoly &f, uint64_t p) {
    FpPoly d = fp_deriv(f, p);
    if (d.empty()) return fp_deg(f) <= 0;
    return fp_deg(fp_gcd(f, d, p)) == 0;
}

bool fp_has_root(const FpPoly &f, uint64_t p) {
    if (!f.empty() && f[0] == 0) return true;
    // gcd(x^p - x, f)
    FpPoly x = {0, 1};
    FpPoly xp = fp_powmod(x, Int(static_cast<unsigned long>(p)), f, p);
    FpPoly g = fp_gcd(fp_sub(xp, x, p), f, p);
    return fp_deg(g) >= 1;
}

namespace {

// trace map for p = 2: a + a^2 + ... + a^(2^(d*deg_ext -1)) used for EDF
FpPoly trace_map2(const FpPoly &a, int d, const FpPoly &m) {
    const uint64_t p = 2;
    FpPoly acc = a, cur = a;
    for (int i = 1; i < d; ++i) {
        cur = fp_mod(fp_mul(cur, cur, p), m, p);
        acc = fp_add(acc, cur, p);
    }
    return acc;
}

void edf(const FpPoly &f, int d, uint64_t p, splitmix64 &rng, std::vector<FpPoly> &out) {
    if (fp_deg(f) == d) {
        out.push_back(fp_monic(f, p));
        return;
    }
    int n = fp_deg(f);
    for (;;) {
        FpPoly a(n);
        for (int i = 0; i < n; ++i) a[i] = rng.below(p);
        fp_trim(a);
        if (fp_deg(a) < 1) continue;
        FpPoly g = fp_gcd(a, f, p);
        if (fp_deg(g) >= 1 && fp_deg(g) < n) {
            edf(g, d, p, rng, out);
            edf(fp_divrem(f, g, p).first, d, p, rng, out);
            return;
        }
        FpPoly b;
        if (p == 2) {
            b = trace_map2(a, d, f);
        } else {
            Int e = Int(static_cast<unsigned long>(p));
            mpz_pow_ui(e.get_mpz_t(), e.get_mpz_t(), d);
            e = (e - 1) / 2;
            b = fp_powmod(a, e, f, p);
            if (!b.empty()) b[0] = subm(b[0], 1, p);
            fp_trim(b);
        }
        g = fp_gcd(b, f, p);
        if (fp_deg(g) >= 1 && fp_deg(g) < n) {
            edf(g, d, p, rng, out);
            edf(fp_divrem(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<FpPoly> fp_factor_squarefree(const FpPoly &f_in, uint64_t p) {
    FpPoly f = fp_monic(f_in, p);
    std::vector<FpPoly> out;
    if (fp_deg(f) <= 0) return out;
    splitmix64 rng(0xfacade);
    // distinct-degree pass
    FpPoly x = {0, 1};
    FpPoly h = x, rem = f;
    int d = 0;
    while (fp_deg(rem) >= 1) {
        ++d;
        if (2 * d > fp_deg(rem)) {
            out.push_back(fp_monic(rem, p));
            break;
        }
        h = fp_powmod(h, Int(static_cast<unsigned long>(p)), rem, p);
        FpPoly g = fp_gcd(fp_sub(h, x, p), rem, p);
        if (fp_deg(g) >= 1) {
            edf(g, d, p, rng, out);
            rem = fp_divrem(rem, g, p).first;
            h = fp_mod(h, rem, p);
        }
    }
    std::sort(out.begin(), out.end(), [](const FpPoly &a, const FpPoly &b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

std::vector<int> fp_factor_degrees(const FpPoly &f_in, uint64_t p) {
    FpPoly f = fp_monic(f_in, p);
    std::vector<int> degs;
    // strip repeated factors via gcd with derivative, recurse on both parts
    while (fp_deg(f) >= 1) {
        FpPoly d = fp_deriv(f, p);
        FpPoly g = d.empty() ? f : fp_gcd(f, d, p);
        if (fp_deg(g) == 0) {
            for (const auto &h : fp_factor_squarefree(f, p)) degs.push_back(fp_deg(h));
            break;
        }
        if (d.empty()) {
            // f = u(x^p); factors of f are p-th powers of factors of u-frobenius-twist
            FpPoly u;
            for (size_t i = 0; i < f.size(); i += p) u.push_back(f[i]);
            fp_trim(u);
            auto sub = fp_factor_degrees(u, p);
            for (int e : sub)
                for (uint64_t i = 0; i < p; ++i) degs.push_back(e);
            break;
        }
        FpPoly sf = fp_divrem(f, g, p).first; // squarefree part
        for (const auto &h : fp_factor_squarefree(sf, p)) degs.push_back(fp_deg(h));
        f = g;
    }
    std::sort(degs.begin(), degs.end());
    return degs;
}

bool fp_irreducible(const FpPoly &f, uint64_t p) {
    if (fp_deg(f) < 1) return false;
    if (!fp_squarefree(f, p)) return false;
    auto fac = fp_factor_squarefree(f, p);
    return fac.size() == 1;
}

// ----- p^k arithmetic -----

void pk_trim(PkPoly &f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PkPoly pk_reduce(const ZPoly &f, const pk_ctx &c) {
    PkPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        r[i] = f[i] % c.mod;
        if (r[i] < 0) r[i] += c.mod;
    }
    pk_trim(r);
    return r;
}

PkPoly pk_mul(const PkPoly &a, const PkPoly &b, const pk_ctx &c) {
    if (a.empty() || b.empty()) return {};
    PkPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % c.mod;
    }
    pk_trim(r);
    return r;
}

PkPoly pk_add(const PkPoly &a, const PkPoly &b, const pk_ctx &c) {
    PkPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) {
        Int x = i < a.size() ? a[i] : Int(0), y = i < b.size() ? b[i] : Int(0);
        r[i] = (x + y) % c.mod;
    }
    pk_trim(r);
    return r;
}

PkPoly pk_sub(const PkPoly &a, const PkPoly &b, const pk_ctx &c) {
    PkPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) {
        Int x = i < a.size() ? a[i] : Int(0), y = i < b.size() ? b[i] : Int(0);
        Int v = (x - y) % c.mod;
        if (v < 0) v += c.mod;
        r[i] = v;
    }
    pk_trim(r);
    return r;
}

PkPoly pk_mod_monic(const PkPoly &a, const PkPoly &m, const pk_ctx &c) {
    assert(!m.empty() && m.back() == 1);
    PkPoly r = a;
    while (int(r.size()) >= int(m.size())) {
        size_t shift = r.size() - m.size();
        Int lead = r.back();
        for (size_t i = 0; i < m.size(); ++i) {
            Int v = (r[shift + i] - lead * m[i]) % c.mod;
            if (v < 0) v += c.mod;
            r[shift + i] = v;
        }
        pk_trim(r);
        if (!r.empty() && r.size() == a.size()) break; // safety, should not happen
    }
    return r;
}

namespace {

// lift f = g*h from mod p^k to mod p^(2k); s*g + t*h = 1 mod p stays fixed
struct lift_pair {
    PkPoly g, h;
};

PkPoly pk_from_fp(const FpPoly &f) {
    PkPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = Int(static_cast<unsigned long>(f[i]));
    return r;
}

// one quadratic Hensel step for the pair (g, h) with cofactors (s, t)
void hensel_step(const PkPoly &f, PkPoly &g, PkPoly &h, PkPoly &s, PkPoly &t,
                 const pk_ctx &cur, const pk_ctx &next) {
    // e = f - g*h (mod next)
    PkPoly e = pk_sub(pk_reduce(ZPoly(f.begin(), f.end()), next), pk_mul(g, h, next), next);
    // q, r: s*e = q*h + r
    // delta g = t*e mod g ... standard von zur Gathen & Gerhard alg 15.10
    PkPoly se = pk_mul(s, e, next);
    // divide se by monic h
    PkPoly q, r = se;
    if (int(r.size()) >= int(h.size())) {
        q.assign(r.size() - h.size() + 1, Int(0));
        while (int(r.size()) >= int(h.size())) {
            size_t shift = r.size() - h.size();
            Int lead = r.back();
            q[shift] = (q[shift] + lead) % next.mod;
            for (size_t i = 0; i < h.size(); ++i) {
                Int v = (r[shift + i] - lead * h[i]) % next.mod;
                if (v < 0) v += next.mod;
                r[shift + i] = v;
            }
            pk_trim(r);
        }
        pk_trim(q);
    }
    PkPoly g_new = pk_add(g, pk_add(pk_mul(t, e, next), pk_mul(q, g, next), next), next);
    PkPoly h_new = pk_add(h, r, next);
    // refresh cofactors: b = s*g_new + t*h_new - 1
    PkPoly b = pk_sub(pk_add(pk_mul(s, g_new, next), pk_mul(t, h_new, next), next),
                      PkPoly{Int(1)}, next);
    PkPoly sb = pk_mul(s, b, next);
    PkPoly q2, r2 = sb;
    if (int(r2.size()) >= int(h_new.size())) {
        q2.assign(r2.size() - h_new.size() + 1, Int(0));
        while (int(r2.size()) >= int(h_new.size())) {
            size_t shift = r2.size() - h_new.size();
            Int lead = r2.back();
            q2[shift] = (q2[shift] + lead) % next.mod;
            for (size_t i = 0; i < h_new.size(); ++i) {
                Int v = (r2[shift + i] - lead * h_new[i]) % next.mod;
                if (v < 0) v += next.mod;
                r2[shift + i] = v;
            }
            pk_trim(r2);
        }
        pk_trim(q2);
    }
    PkPoly s_new = pk_sub(s, r2, next);
    PkPoly t_new = pk_sub(t, pk_add(pk_mul(t, b, next), pk_mul(q2, g_new, next), next), next);
    g = g_new; h = h_new; s = s_new; t = t_new;
    (void)cur;
}

// lift f = g0*h0 (mod p) to mod p^k
void lift_two(const ZPoly &f, const FpPoly &g0, const FpPoly &h0, const Int &p, int k,
              PkPoly &g_out, PkPoly &h_out) {
    uint64_t pu = p.get_ui();
    FpPoly gg, ss, tt;
    fp_xgcd(g0, h0, gg, ss, tt, pu);
    if (fp_deg(gg) != 0) fail(errc::hypothesis_violated, "hensel factors not coprime");
    PkPoly g = pk_from_fp(g0), h = pk_from_fp(h0), s = pk_from_fp(ss), t = pk_from_fp(tt);
    int cur_k = 1;
    PkPoly F(f.begin(), f.end());
    while (cur_k < k) {
        int nk = std::min(2 * cur_k, k);
        Int mod;
        mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), nk);
        pk_ctx next{p, nk, mod};
        Int cmod;
        mpz_pow_ui(cmod.get_mpz_t(), p.get_mpz_t(), cur_k);
        pk_ctx cur{p, cur_k, cmod};
        hensel_step(F, g, h, s, t, cur, next);
        cur_k = nk;
    }
    Int mod;
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), k);
    pk_ctx fin{p, k, mod};
    g_out = pk_reduce(ZPoly(g.begin(), g.end()), fin);
    h_out = pk_reduce(ZPoly(h.begin(), h.end()), fin);
}

} // namespace

std::vector<PkPoly> hensel_lift(const ZPoly &f, const std::vector<FpPoly> &factors,
                                const Int &p, int k) {
    if (factors.size() == 1) {
        Int mod;
        mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), k);
        pk_ctx c{p, k, mod};
        return {pk_reduce(f, c)};
    }
    // split factors in two halves, lift the pair, recurse
    size_t half = factors.size() / 2;
    uint64_t pu = p.get_ui();
    FpPoly g0 = {1}, h0 = {1};
    for (size_t i = 0; i < half; ++i) g0 = fp_mul(g0, factors[i], pu);
    for (size_t i = half; i < factors.size(); ++i) h0 = fp_mul(h0, factors[i], pu);
    PkPoly g, h;
    lift_two(f, g0, h0, p, k, g, h);
    std::vector<FpPoly> left(factors.begin(), factors.begin() + half);
    std::vector<FpPoly> right(factors.begin() + half, factors.end());
    ZPoly gz(g.begin(), g.end()), hz(h.begin(), h.end());
    auto lres = hensel_lift(gz, left, p, k);
    auto rres = hensel_lift(hz, right, p, k);
    lres.insert(lres.end(), rres.begin(), rres.end());
    return lres;
}

} // namespace diodef
