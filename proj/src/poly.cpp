#include "diodef/poly.hpp"
#include "diodef/errors.hpp"
#include "diodef/modpoly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace diodef {

void q_trim(QPoly &f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

void z_trim(ZPoly &f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly q_of(const ZPoly &f) {
    QPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = Rat(f[i]);
    return r;
}

std::pair<ZPoly, Int> z_clear(const QPoly &f) {
    Int l(1);
    for (const auto &c : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly g(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        Rat t = f[i] * Rat(l);
        assert(is_int(t));
        g[i] = num(t);
    }
    return {g, l};
}

QPoly q_add(const QPoly &a, const QPoly &b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    q_trim(r);
    return r;
}

QPoly q_sub(const QPoly &a, const QPoly &b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    q_trim(r);
    return r;
}

QPoly q_mul(const QPoly &a, const QPoly &b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    q_trim(r);
    return r;
}

QPoly q_scale(const QPoly &a, const Rat &c) {
    if (c == 0) return {};
    QPoly r = a;
    for (auto &x : r) x *= c;
    return r;
}

QPoly q_deriv(const QPoly &a) {
    QPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Rat(Int(i)));
    q_trim(r);
    return r;
}

std::pair<QPoly, QPoly> q_divrem(const QPoly &a, const QPoly &b) {
    if (b.empty()) fail(errc::division_by_zero, "polynomial division by zero");
    QPoly r = a, q;
    if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, Rat(0));
    while (r.size() >= b.size() && !r.empty()) {
        size_t shift = r.size() - b.size();
        Rat c = r.back() / b.back();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        q_trim(r);
    }
    q_trim(q);
    return {q, r};
}

QPoly q_mod(const QPoly &a, const QPoly &b) { return q_divrem(a, b).second; }

QPoly q_monic(const QPoly &f) {
    if (f.empty()) return f;
    return q_scale(f, Rat(1) / f.back());
}

QPoly q_gcd(QPoly a, QPoly b) {
    while (!b.empty()) {
        QPoly r = q_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : q_monic(a);
}

Rat q_eval(const QPoly &f, const Rat &x) {
    Rat r(0);
    for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

QPoly q_compose(const QPoly &f, const QPoly &g) {
    QPoly r;
    for (size_t i = f.size(); i-- > 0;) {
        r = q_mul(r, g);
        if (f[i] != 0) {
            if (r.empty()) r.push_back(f[i]);
            else r[0] += f[i];
        }
        q_trim(r);
    }
    return r;
}

ZPoly z_mul(const ZPoly &a, const ZPoly &b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    z_trim(r);
    return r;
}

ZPoly z_add(const ZPoly &a, const ZPoly &b) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    z_trim(r);
    return r;
}

ZPoly z_sub(const ZPoly &a, const ZPoly &b) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    z_trim(r);
    return r;
}

Int z_eval(const ZPoly &f, const Int &x) {
    Int r(0);
    for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

Int z_content(const ZPoly &f) {
    Int g(0);
    for (const auto &c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly z_primitive(const ZPoly &f) {
    Int c = z_content(f);
    if (c == 0 || c == 1) return f;
    ZPoly r = f;
    for (auto &x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return r;
}

std::optional<ZPoly> z_divexact(const ZPoly &a, const ZPoly &b) {
    if (b.empty()) return std::nullopt;
    auto [q, r] = q_divrem(q_of(a), q_of(b));
    if (!r.empty()) return std::nullopt;
    ZPoly out(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        if (!is_int(q[i])) return std::nullopt;
        out[i] = num(q[i]);
    }
    return out;
}

// subresultant PRS
Int z_resultant(const ZPoly &a_in, const ZPoly &b_in) {
    ZPoly a = a_in, b = b_in;
    z_trim(a);
    z_trim(b);
    if (a.empty() || b.empty()) return Int(0);
    if (z_deg(a) == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), a[0].get_mpz_t(), z_deg(b_in));
        return r;
    }
    if (z_deg(b) == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), b[0].get_mpz_t(), z_deg(a_in));
        return r;
    }
    // track sign; ensure deg a >= deg b
    int sign = 1;
    if (z_deg(a) < z_deg(b)) {
        if ((z_deg(a) & 1) && (z_deg(b) & 1)) sign = -sign;
        std::swap(a, b);
    }
    Int g(1), h(1), res_scale_num(1), res_scale_den(1);
    for (;;) {
        int d = z_deg(a) - z_deg(b);
        if ((z_deg(a) & 1) && (z_deg(b) & 1)) sign = -sign;
        // pseudo-remainder: lc(b)^(d+1) * a = q*b + r
        ZPoly r = a;
        Int lb = b.back();
        Int lbd;
        mpz_pow_ui(lbd.get_mpz_t(), lb.get_mpz_t(), d + 1);
        for (auto &c : r) c *= lbd;
        // divide r by b over Z (exact for pseudo-division)
        while (int(r.size()) >= int(b.size()) && !r.empty()) {
            size_t shift = r.size() - b.size();
            Int c = r.back() / lb;
            assert(c * lb == r.back());
            for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
            z_trim(r);
        }
        if (r.empty()) return Int(0);
        // divide r by g*h^d
        Int ghd = g;
        Int hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), d);
        ghd *= hd;
        for (auto &c : r) {
            assert(mpz_divisible_p(c.get_mpz_t(), ghd.get_mpz_t()));
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), ghd.get_mpz_t());
        }
        a = std::move(b);
        b = std::move(r);
        g = a.back();
        // h = g^d * h^(1-d) i.e. h_{new}^? : standard update h = h^(1-d) g^d
        if (d == 0) {
            // h unchanged
        } else if (d == 1) {
            h = g;
        } else {
            Int gn;
            mpz_pow_ui(gn.get_mpz_t(), g.get_mpz_t(), d);
            Int hn;
            mpz_pow_ui(hn.get_mpz_t(), h.get_mpz_t(), d - 1);
            assert(mpz_divisible_p(gn.get_mpz_t(), hn.get_mpz_t()));
            mpz_divexact(h.get_mpz_t(), gn.get_mpz_t(), hn.get_mpz_t());
        }
        if (z_deg(b) == 0) {
            // res = sign * lc(b)^deg(a) / h^(deg(a)-1)
            Int lbz = b[0];
            Int numr;
            mpz_pow_ui(numr.get_mpz_t(), lbz.get_mpz_t(), z_deg(a));
            if (z_deg(a) >= 1) {
                Int hp;
                mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), z_deg(a) - 1);
                assert(mpz_divisible_p(numr.get_mpz_t(), hp.get_mpz_t()));
                mpz_divexact(numr.get_mpz_t(), numr.get_mpz_t(), hp.get_mpz_t());
            }
            return sign < 0 ? Int(-numr) : numr;
        }
    }
}

Rat q_resultant(const QPoly &a, const QPoly &b) {
    if (a.empty() || b.empty()) return Rat(0);
    auto [az, ac] = z_clear(a);
    auto [bz, bc] = z_clear(b);
    Int r = z_resultant(az, bz);
    // res(a/ac, b/bc) = res(az, bz) / (ac^deg b * bc^deg a)
    Int d1, d2;
    mpz_pow_ui(d1.get_mpz_t(), ac.get_mpz_t(), z_deg(bz));
    mpz_pow_ui(d2.get_mpz_t(), bc.get_mpz_t(), z_deg(az));
    return make_rat(r, d1 * d2);
}

Int z_disc(const ZPoly &f) {
    int n = z_deg(f);
    if (n < 1) return Int(1);
    ZPoly d;
    for (int i = 1; i <= n; ++i) d.push_back(f[i] * Int(i));
    z_trim(d);
    Int r = z_resultant(f, d);
    assert(mpz_divisible_p(r.get_mpz_t(), f.back().get_mpz_t()));
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.back().get_mpz_t());
    if ((Int(n) * (n - 1) / 2) % 2 == 1) r = -r;
    return r;
}

// ----- Sturm -----

namespace {

int sgn_rat(const Rat &q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

std::vector<QPoly> sturm_chain(const ZPoly &f) {
    std::vector<QPoly> ch;
    QPoly a = q_of(f), b = q_deriv(a);
    q_trim(a);
    ch.push_back(a);
    if (b.empty()) return ch;
    ch.push_back(b);
    for (;;) {
        QPoly r = q_mod(ch[ch.size() - 2], ch.back());
        if (r.empty()) break;
        for (auto &c : r) c = -c;
        ch.push_back(r);
    }
    return ch;
}

int sign_changes_at(const std::vector<QPoly> &ch, const Rat &x) {
    int prev = 0, changes = 0;
    for (const auto &p : ch) {
        int s = sgn_rat(q_eval(p, x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

int sign_changes_at_inf(const std::vector<QPoly> &ch, int dir) {
    int prev = 0, changes = 0;
    for (const auto &p : ch) {
        if (p.empty()) continue;
        int s = sgn_rat(p.back());
        if (dir < 0 && (q_deg(p) & 1)) s = -s;
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

} // namespace

int sturm_count(const ZPoly &f, const Rat &a, const Rat &b) {
    auto ch = sturm_chain(f);
    return sign_changes_at(ch, a) - sign_changes_at(ch, b);
}

int sturm_count_all(const ZPoly &f) {
    auto ch = sturm_chain(f);
    return sign_changes_at_inf(ch, -1) - sign_changes_at_inf(ch, +1);
}

Rat root_bound(const ZPoly &f) {
    // 1 + max |a_i| / |lc|
    assert(!f.empty());
    Rat m(0);
    Rat lc = Rat(abs(f.back()));
    for (size_t i = 0; i + 1 < f.size(); ++i) {
        Rat v = Rat(abs(f[i])) / lc;
        if (v > m) m = v;
    }
    return m + 1;
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const ZPoly &f) {
    std::vector<std::pair<Rat, Rat>> out;
    if (z_deg(f) < 1) return out;
    auto ch = sturm_chain(f);
    Rat B = root_bound(f);
    struct seg {
        Rat lo, hi;
        int nlo, nhi;
    };
    int nlo = sign_changes_at(ch, -B), nhi = sign_changes_at(ch, B);
    std::vector<seg> stack{{-B, B, nlo, nhi}};
    while (!stack.empty()) {
        seg s = stack.back();
        stack.pop_back();
        int k = s.nlo - s.nhi;
        if (k == 0) continue;
        if (k == 1) {
            out.push_back({s.lo, s.hi});
            continue;
        }
        Rat mid = (s.lo + s.hi) / 2;
        // nudge off a root of f
        while (q_eval(ch[0], mid) == 0) mid += (s.hi - s.lo) / 64;
        int nm = sign_changes_at(ch, mid);
        stack.push_back({s.lo, mid, s.nlo, nm});
        stack.push_back({mid, s.hi, nm, s.nhi});
    }
    std::sort(out.begin(), out.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
}

std::pair<Rat, Rat> refine_root(const ZPoly &f, Rat lo, Rat hi, const Rat &width) {
    // invariant: exactly one root in (lo, hi]
    QPoly fq = q_of(f);
    int shi = sgn_rat(q_eval(fq, hi));
    while (hi - lo > width) {
        Rat mid = (lo + hi) / 2;
        Rat v = q_eval(fq, mid);
        if (v == 0) {
            // exact rational root: collapse around it
            Rat eps = width / 4;
            return {mid - eps, mid + eps};
        }
        int sm = sgn_rat(v);
        if (shi != 0 && sm != shi) {
            lo = mid;
        } else if (shi == 0) {
            // root at hi itself
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

// ----- irreducibility / factorisation over Z -----

namespace {

// all divisors of |n| with both signs, n != 0; capped
std::optional<std::vector<Int>> signed_divisors(const Int &n, size_t cap) {
    auto fac = factorize(n);
    std::vector<Int> divs{Int(1)};
    for (const auto &[p, e] : fac) {
        size_t base = divs.size();
        Int pk(1);
        std::vector<Int> cur = divs;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) {
                divs.push_back(cur[j] * pk);
                if (divs.size() > cap) return std::nullopt;
            }
        }
    }
    std::vector<Int> out;
    out.reserve(divs.size() * 2);
    for (const auto &d : divs) {
        out.push_back(d);
        out.push_back(-d);
    }
    return out;
}

// monic interpolation: find monic g of degree d with g(x_i) = v_i
std::optional<ZPoly> monic_interpolate(const std::vector<Int> &xs, const std::vector<Int> &vs,
                                       int d) {
    // h = g - x^d has degree < d; Lagrange over Q then integrality check
    QPoly h; // interpolate v_i - x_i^d
    size_t m = xs.size();
    assert(int(m) == d);
    for (size_t i = 0; i < m; ++i) {
        Int xd;
        mpz_pow_ui(xd.get_mpz_t(), xs[i].get_mpz_t(), d);
        Rat yi = Rat(vs[i] - xd);
        QPoly li = {Rat(1)};
        Rat denom(1);
        for (size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            li = q_mul(li, QPoly{Rat(-xs[j]), Rat(1)});
            denom *= Rat(xs[i] - xs[j]);
        }
        h = q_add(h, q_scale(li, yi / denom));
    }
    ZPoly g(d + 1, Int(0));
    g[d] = 1;
    for (size_t i = 0; i < h.size(); ++i) {
        if (!is_int(h[i])) return std::nullopt;
        g[i] = num(h[i]);
    }
    return g;
}

// candidate degrees of factors from mod-p factor patterns
std::vector<bool> feasible_degrees(const ZPoly &f) {
    int n = z_deg(f);
    std::vector<bool> ok(n, true); // ok[d] for 1 <= d <= n-1 (index d)
    ok[0] = false;
    Int lead = f.back(), D = z_disc(f);
    int used = 0;
    for (uint32_t p = 2; used < 6 && p < 5000; p = uint32_t(next_prime_above(Int(p)).get_ui())) {
        if (mpz_divisible_ui_p(lead.get_mpz_t(), p)) continue;
        if (D != 0 && mpz_divisible_ui_p(D.get_mpz_t(), p)) continue;
        FpPoly fp = fp_reduce(f, p);
        if (fp_deg(fp) != n) continue;
        auto degs = fp_factor_degrees(fp, p);
        ++used;
        // subset sums of degs are the possible factor degrees mod p
        std::vector<bool> sums(n + 1, false);
        sums[0] = true;
        for (int d : degs)
            for (int s = n; s >= d; --s)
                if (sums[s - d]) sums[s] = true;
        for (int d = 1; d < n; ++d)
            if (!sums[d]) ok[d] = false;
    }
    return ok;
}

} // namespace

std::optional<ZPoly> find_monic_factor(const ZPoly &f) {
    int n = z_deg(f);
    if (n <= 0) return std::nullopt;
    if (f.back() != 1) fail(errc::not_monic, "factor search requires monic input");
    if (n == 1) return std::nullopt;
    // rational (here: integer) roots divide the constant term
    if (f[0] == 0) return ZPoly{Int(0), Int(1)};
    {
        auto divs = signed_divisors(f[0], 4096);
        if (divs) {
            for (const auto &r : *divs)
                if (z_eval(f, r) == 0) return ZPoly{Int(-r), Int(1)};
        } else {
            // constant term too composite for enumeration; fall through to
            // Kronecker with root search folded into degree-1 candidates
        }
    }
    // repeated factors: gcd(f, f')
    {
        QPoly g = q_gcd(q_of(f), q_deriv(q_of(f)));
        if (q_deg(g) >= 1) {
            auto [gz, c] = z_clear(q_monic(g));
            (void)c;
            return gz;
        }
    }
    auto ok = feasible_degrees(f);
    bool any = false;
    for (int d = 1; d <= n / 2; ++d) any = any || ok[d];
    if (!any) return std::nullopt; // mod-p certificate of irreducibility
    // Kronecker: for each feasible degree d, interpolate candidates through
    // divisor tuples of f at d sample points
    for (int d = 2; d <= n / 2; ++d) {
        if (!ok[d]) continue;
        // pick d sample points with small nonzero |f|
        std::vector<Int> xs;
        std::vector<std::vector<Int>> divlists;
        Int x(0);
        size_t budget = 1;
        while (int(xs.size()) < d) {
            Int v = z_eval(f, x);
            if (v != 0) {
                auto divs = signed_divisors(v, 512);
                if (divs) {
                    xs.push_back(x);
                    budget *= divs->size();
                    divlists.push_back(std::move(*divs));
                }
            }
            x = x <= 0 ? Int(1 - x) : Int(-x);
            if (abs(x) > 2 * n + 20) fail(errc::reducible, "kronecker sample exhaustion");
        }
        if (budget > 50000000ULL) fail(errc::degree_budget_exceeded, "kronecker search too large");
        std::vector<size_t> idx(d, 0);
        for (;;) {
            std::vector<Int> vs(d);
            for (int i = 0; i < d; ++i) vs[i] = divlists[i][idx[i]];
            auto g = monic_interpolate(xs, vs, d);
            if (g && z_deg(*g) == d) {
                auto q = z_divexact(f, *g);
                if (q) return g;
            }
            int pos = 0;
            while (pos < d && ++idx[pos] == divlists[pos].size()) idx[pos++] = 0;
            if (pos == d) break;
        }
    }
    return std::nullopt;
}

bool is_irreducible_monic(const ZPoly &f) {
    if (z_deg(f) < 1) return false;
    if (z_deg(f) == 1) return true;
    return !find_monic_factor(f).has_value();
}

std::vector<ZPoly> factor_monic(const ZPoly &f) {
    std::vector<ZPoly> out, work{f};
    while (!work.empty()) {
        ZPoly g = work.back();
        work.pop_back();
        if (z_deg(g) == 0) continue;
        auto h = find_monic_factor(g);
        if (!h) {
            out.push_back(g);
            continue;
        }
        auto q = z_divexact(g, *h);
        assert(q);
        work.push_back(*h);
        work.push_back(*q);
    }
    std::sort(out.begin(), out.end(), [](const ZPoly &a, const ZPoly &b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

} // namespace diodef
