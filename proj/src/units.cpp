#include "diodef/units.hpp"
#include "diodef/errors.hpp"
#include "diodef/matq.hpp"

#include <algorithm>
#include <cassert>

namespace diodef {

pell_solution pell_solve_Q(const Int &d) {
    if (d <= 1) fail(errc::hypothesis_violated, "need d > 1");
    if (exact_sqrt(d)) fail(errc::perfect_square, "d is a perfect square");
    Int a0 = isqrt_floor(d);
    // continued fraction of sqrt(d); scan convergents for h^2 - d k^2 = 1
    Int m(0), dd(1), a = a0;
    Int h_prev(1), h = a0, k_prev(0), k(1);
    for (int it = 0; it < 100000; ++it) {
        if (h * h - d * k * k == 1) return {h, k, d};
        m = dd * a - m;
        dd = (d - m * m) / dd;
        a = (a0 + m) / dd;
        Int h_next = a * h + h_prev, k_next = a * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    fail(errc::budget_exhausted, "pell expansion runaway");
}

namespace {

// characteristic polynomial of sqrt(d) over Q: prod over conjugates sigma
// of (y^2 - sigma(d)), by interpolation
ZPoly sqrt_char_poly(const field_element &d) {
    const FieldPtr &K = d.K;
    int n = K->degree;
    int m = 2 * n;
    QPoly fq = q_of(K->min_poly);
    std::vector<Int> xs;
    std::vector<Rat> vs;
    for (int i = 0; i <= m; ++i) {
        Int y0(i - n);
        // g(x) = y0^2 - d(x)
        QPoly g = q_scale(d.c, Rat(-1));
        if (g.empty()) g.push_back(Rat(0));
        g[0] += Rat(y0 * y0);
        q_trim(g);
        Rat r = g.empty() ? Rat(0) : q_resultant(fq, g);
        xs.push_back(y0);
        vs.push_back(r);
    }
    QPoly h;
    for (int i = 0; i <= m; ++i) {
        QPoly li = {Rat(1)};
        Rat denom(1);
        for (int j = 0; j <= m; ++j) {
            if (j == i) continue;
            li = q_mul(li, QPoly{Rat(-xs[j]), Rat(1)});
            denom *= Rat(xs[i] - xs[j]);
        }
        h = q_add(h, q_scale(li, vs[i] / denom));
    }
    ZPoly out(h.size());
    for (size_t i = 0; i < h.size(); ++i) {
        if (!is_int(h[i])) fail(errc::inconsistent, "sqrt resolvent not integral");
        out[i] = num(h[i]);
    }
    return out;
}

field_element eval_zpoly_at(const ZPoly &f, const field_element &v) {
    field_element r = v.K->zero();
    for (size_t i = f.size(); i-- > 0;) {
        r = fe_mul(r, v);
        r = fe_add(r, v.K->from_rat(Rat(f[i])));
    }
    return r;
}

} // namespace

sqrt_ext extend_by_sqrt(const FieldPtr &K, const field_element &d) {
    if (!in_ztheta(d)) fail(errc::hypothesis_violated, "d must be integral");
    if (d.is_zero()) fail(errc::hypothesis_violated, "d must be nonzero");
    int n = K->degree;
    ZPoly h = sqrt_char_poly(d);
    auto factors = factor_monic(z_primitive(h));
    // route 1: a full-degree factor pins K inside Q(delta) via a gcd
    for (const auto &g : factors) {
        if (z_deg(g) != 2 * n) continue;
        FieldPtr L = mk_field(g);
        field_element delta = L->gen();
        field_element delta2 = fe_mul(delta, delta);
        // gcd(f_K(x), d(x) - delta^2) over L, hoping for a linear gcd
        std::vector<field_element> fk, dm;
        for (const auto &c : K->min_poly) fk.push_back(L->from_rat(Rat(c)));
        dm.resize(std::max<size_t>(d.c.size(), 1), L->zero());
        for (size_t i = 0; i < d.c.size(); ++i) dm[i] = L->from_rat(d.c[i]);
        dm[0] = fe_sub(dm[0], delta2);
        for (auto &c : dm) c = fe_neg(c); // delta^2 - d(x), same roots
        // polynomial gcd over L
        auto lp_trim = [](std::vector<field_element> &f) {
            while (!f.empty() && f.back().is_zero()) f.pop_back();
        };
        auto lp_mod = [&](std::vector<field_element> a, const std::vector<field_element> &b) {
            field_element inv = fe_inv(b.back());
            while (a.size() >= b.size() && !a.empty()) {
                size_t shift = a.size() - b.size();
                field_element c = fe_mul(a.back(), inv);
                for (size_t i = 0; i < b.size(); ++i)
                    a[shift + i] = fe_sub(a[shift + i], fe_mul(c, b[i]));
                lp_trim(a);
            }
            return a;
        };
        std::vector<field_element> A = fk, B = dm;
        lp_trim(A);
        lp_trim(B);
        while (!B.empty()) {
            auto R = lp_mod(A, B);
            A = B;
            B = R;
        }
        if (A.size() == 2) {
            field_element theta_img = fe_neg(fe_mul(A[0], fe_inv(A[1])));
            if (eval_zpoly_at(K->min_poly, theta_img).is_zero()) {
                subfield_map km{K, L, theta_img};
                field_element d_img = map_into(km, d);
                if (fe_eq(delta2, d_img)) return {L, km, delta, d_img};
            }
        }
    }
    // route 2: compositum with the abstract field of a smaller factor
    for (const auto &g : factors) {
        if (z_deg(g) < 1 || z_deg(g) == 2 * n) continue;
        FieldPtr D = mk_field(g);
        auto comp = compositum(K, D, 2 * n);
        if (comp.field->degree != 2 * n) continue;
        field_element delta = comp.f2_map.gen_image;
        field_element d_img = map_into(comp.f1_map, d);
        if (fe_eq(fe_mul(delta, delta), d_img))
            return {comp.field, comp.f1_map, delta, d_img};
    }
    fail(errc::hypothesis_violated, "d is a square in K (or no compatible extension found)");
}

std::optional<std::pair<field_element, field_element>> split_by_delta(const sqrt_ext &ext,
                                                                      const field_element &v) {
    int n = ext.K_in_L.sub->degree;
    int N = ext.L->degree;
    // columns: theta^i and delta*theta^i images, i < n
    QMat A(N, QVec(2 * n, Rat(0)));
    field_element pw = ext.L->one();
    for (int i = 0; i < n; ++i) {
        field_element col0 = pw;
        field_element col1 = fe_mul(ext.delta, pw);
        for (int r = 0; r < N; ++r) {
            A[r][i] = r < int(col0.c.size()) ? col0.c[r] : Rat(0);
            A[r][n + i] = r < int(col1.c.size()) ? col1.c[r] : Rat(0);
        }
        pw = fe_mul(pw, ext.K_in_L.gen_image);
    }
    QVec b(N, Rat(0));
    for (int r = 0; r < N; ++r) b[r] = r < int(v.c.size()) ? v.c[r] : Rat(0);
    auto sol = q_solve(A, b);
    if (!sol) return std::nullopt;
    QPoly c0(sol->begin(), sol->begin() + n), c1(sol->begin() + n, sol->end());
    q_trim(c0);
    q_trim(c1);
    const FieldPtr &K = ext.K_in_L.sub;
    return std::make_pair(field_element{K, c0}, field_element{K, c1});
}

quad_unit make_quad_unit(const sqrt_ext &ext, const field_element &x, const field_element &y) {
    field_element xi = map_into(ext.K_in_L, x);
    field_element yi = map_into(ext.K_in_L, y);
    field_element eps = fe_sub(xi, fe_mul(ext.delta, yi));
    // norm-one certificate: (x - delta y)(x + delta y) = x^2 - d y^2 = 1
    field_element sigma = fe_add(xi, fe_mul(ext.delta, yi));
    if (!fe_eq(fe_mul(eps, sigma), ext.L->one()))
        fail(errc::hypothesis_violated, "x^2 - d y^2 != 1");
    return {ext, x, y, eps};
}

std::optional<long> is_root_of_unity(const field_element &x) {
    if (x.is_zero()) return std::nullopt;
    Rat N = norm(x);
    if (N != 1 && N != -1) return std::nullopt;
    if (!is_integral(x)) return std::nullopt;
    int n = x.K->degree;
    // phi(k) <= n bounds the possible orders
    auto phi = [](long k) {
        long r = k;
        for (long p = 2; p * p <= k; ++p)
            if (k % p == 0) {
                r -= r / p;
                while (k % p == 0) k /= p;
            }
        if (k > 1) r -= r / k;
        return r;
    };
    long kmax = 2 * n * n + 2;
    field_element pw = x;
    for (long k = 1; k <= kmax; ++k) {
        if (phi(k) <= n && fe_eq(pw, x.K->one())) return k;
        pw = fe_mul(pw, x);
    }
    return std::nullopt;
}

bool check_rootofunity_fourth(const field_element &x, const field_element &y,
                              const field_element &d) {
    auto ext = extend_by_sqrt(x.K, d);
    quad_unit xi = make_quad_unit(ext, x, y);
    if (!is_root_of_unity(xi.eps))
        fail(errc::hypothesis_violated, "xi is not a root of unity");
    return fe_eq(fe_pow(xi.eps, Int(4)), ext.L->one());
}

std::optional<quad_unit> norm_one_unit_search(const FieldPtr &K, const field_element &d,
                                              long height_budget) {
    auto ext = extend_by_sqrt(K, d);
    auto try_pair = [&](const field_element &x, const field_element &y)
        -> std::optional<quad_unit> {
        if (!in_ztheta(x) || !in_ztheta(y)) return std::nullopt;
        field_element lhs = fe_sub(fe_mul(x, x), fe_mul(fe_mul(d, y), y));
        if (!fe_eq(lhs, K->one())) return std::nullopt;
        quad_unit u = make_quad_unit(ext, x, y);
        if (is_root_of_unity(u.eps)) return std::nullopt;
        return u;
    };
    // rational d > 1: the Pell solution over Q lifts into any K
    if (d.is_rational() && is_int(d.rat()) && d.rat() > 1 && !exact_sqrt(num(d.rat()))) {
        auto ps = pell_solve_Q(num(d.rat()));
        auto u = try_pair(K->from_rat(Rat(ps.x)), K->from_rat(Rat(ps.y)));
        if (u) return u;
    }
    int n = K->degree;
    // shell search over pairs (x, y) of Z[theta] coordinates
    for (long B = 1; B <= height_budget; ++B) {
        std::vector<long> idx(2 * n, -B);
        for (;;) {
            long maxc = 0;
            for (long v : idx) maxc = std::max(maxc, std::abs(v));
            if (maxc == B) {
                QPoly xc(n), yc(n);
                for (int i = 0; i < n; ++i) {
                    xc[i] = Rat(Int(idx[i]));
                    yc[i] = Rat(Int(idx[n + i]));
                }
                q_trim(xc);
                q_trim(yc);
                auto u = try_pair(field_element{K, xc}, field_element{K, yc});
                if (u) return u;
            }
            size_t pos = 0;
            while (pos < idx.size() && ++idx[pos] > B) idx[pos++] = -B;
            if (pos == idx.size()) break;
        }
    }
    return std::nullopt;
}

bool fourth_power_in_BM(const quad_unit &eps, const subfield_map &M_in_K) {
    if (M_in_K.sup->min_poly != eps.ext.K_in_L.sub->min_poly)
        fail(errc::subfield_data_missing, "subfield map does not land in the base field");
    field_element e4 = fe_pow(eps.eps, Int(4));
    auto comps = split_by_delta(eps.ext, e4);
    if (!comps) fail(errc::inconsistent, "fourth power left the delta-module");
    auto cx = subfield_coords(M_in_K, comps->first);
    auto cy = subfield_coords(M_in_K, comps->second);
    if (!cx || !cy) return false;
    return is_integral(*cx) && is_integral(*cy);
}

std::optional<long> closeto1_find_r(const quad_unit &eps, long k, const Rat &lambda,
                                    long r_budget) {
    const FieldPtr &L = eps.ext.L;
    std::vector<int> nonreal;
    for (const auto &e : L->embeddings())
        if (!e.is_real) nonreal.push_back(e.index);
    if (nonreal.empty()) return 1; // vacuous quantifier
    Rat lam2 = lambda * lambda;
    for (long r = 1; r <= r_budget; ++r) {
        field_element er = fe_pow(eps.eps, Int(r));
        field_element erk = fe_pow(eps.eps, Int(r) * Int(k));
        field_element den_el = fe_sub(er, L->one());
        if (den_el.is_zero()) continue; // eps^r = 1 cannot happen for infinite order
        field_element v = fe_sub(fe_div(fe_sub(erk, L->one()), den_el), L->from_rat(Rat(k)));
        bool all_ok = true, undecided = false;
        for (int idx : nonreal) {
            bool decided = false;
            for (unsigned bits = 64; bits <= 4096; bits *= 2) {
                QIv a2 = cb_abs2(embed_value(v, idx, bits));
                if (a2.hi < lam2) {
                    decided = true;
                    break;
                }
                if (a2.lo > lam2) {
                    decided = true;
                    all_ok = false;
                    break;
                }
                if (a2.lo == lam2 && a2.hi == lam2) {
                    decided = true; // exact tie: not strictly below
                    all_ok = false;
                    break;
                }
            }
            if (!decided) undecided = true;
            if (!all_ok) break;
        }
        if (undecided) fail(errc::precision_exhausted, "interval comparison stalled");
        if (all_ok) return r;
    }
    return std::nullopt;
}

congruence_power unit_congruence_power(const quad_unit &eps, const field_element &m,
                                       const Int &order_budget) {
    const FieldPtr &L = eps.ext.L;
    if (m.is_zero()) fail(errc::division_by_zero, "zero modulus");
    field_element mi = m.K == L ? m : map_into(eps.ext.K_in_L, m);
    if (!in_ztheta(mi) || !in_ztheta(eps.eps))
        fail(errc::hypothesis_violated, "modulus and unit must be integral");
    // trivial modulus
    if (mi.is_rational() && (mi.rat() == 1 || mi.rat() == -1))
        return {Int(1), eps.eps};
    int N = L->degree;
    // lattice of the principal ideal (m): columns are coords of m * theta^j
    ZMat A(N, ZVec(N, Int(0)));
    field_element pw = mi;
    for (int j = 0; j < N; ++j) {
        for (int r = 0; r < N; ++r)
            A[r][j] = r < int(pw.c.size()) ? num(pw.c[r]) : Int(0);
        pw = fe_mul(pw, L->gen());
    }
    auto reduce = [&](const field_element &v) {
        ZVec w(N, Int(0));
        for (int r = 0; r < N; ++r) w[r] = r < int(v.c.size()) ? num(v.c[r]) : Int(0);
        ZVec red = z_lattice_reduce(A, w);
        QPoly c(N);
        for (int r = 0; r < N; ++r) c[r] = Rat(red[r]);
        q_trim(c);
        return field_element{L, c};
    };
    field_element cur = reduce(eps.eps);
    field_element one = L->one();
    for (Int t(1); t <= order_budget; ++t) {
        field_element diff = fe_sub(cur, one);
        bool hit = diff.is_zero() || is_integral(fe_div(diff, mi));
        if (hit) {
            field_element nu = fe_pow(eps.eps, t);
            // re-verify on the true power
            field_element q = fe_div(fe_sub(nu, one), mi);
            if (!is_integral(q)) fail(errc::inconsistent, "reduced/true power mismatch");
            return {t, nu};
        }
        cur = reduce(fe_mul(cur, eps.eps));
    }
    fail(errc::order_budget_exceeded, "no power congruent to 1 within the budget");
}

} // namespace diodef
