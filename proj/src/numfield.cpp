#include "diodef/numfield.hpp"
#include "diodef/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace diodef {

namespace {

constexpr unsigned kBaseBits = 64;
constexpr unsigned kMaxBits = 4096;

// ----- multiprecision complex (non-rigorous iteration helper) -----

struct mc {
    mpf_class re, im;
    mc(unsigned prec) : re(0, prec), im(0, prec) {}
    mc(const mpf_class &r, const mpf_class &i) : re(r), im(i) {}
};

mc mc_add(const mc &a, const mc &b) { return {a.re + b.re, a.im + b.im}; }
mc mc_sub(const mc &a, const mc &b) { return {a.re - b.re, a.im - b.im}; }
mc mc_mul(const mc &a, const mc &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
mpf_class mc_norm(const mc &a) { return a.re * a.re + a.im * a.im; }
mc mc_div(const mc &a, const mc &b) {
    mpf_class n = mc_norm(b);
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

// exact Gaussian-rational point
struct qc {
    Rat re, im;
};
qc qc_mul(const qc &a, const qc &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
qc qc_eval(const ZPoly &f, const qc &z) {
    qc r{Rat(0), Rat(0)};
    for (size_t i = f.size(); i-- > 0;) {
        r = qc_mul(r, z);
        r.re += Rat(f[i]);
    }
    return r;
}
Rat qc_abs2(const qc &a) { return a.re * a.re + a.im * a.im; }

Rat rat_of_mpf(const mpf_class &x) {
    mpq_class q;
    mpq_set_f(q.get_mpq_t(), x.get_mpf_t());
    return q;
}

ZPoly z_deriv_poly(const ZPoly &f) {
    ZPoly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * Int(i));
    z_trim(d);
    return d;
}

// Aberth-Ehrlich sweep at the given precision; returns n approximations
std::vector<mc> aberth(const ZPoly &f, unsigned prec, const std::vector<mc> *warm) {
    int n = z_deg(f);
    ZPoly df = z_deriv_poly(f);
    std::vector<mc> fz, dfz;
    for (const auto &c : f) fz.push_back({mpf_class(c, prec), mpf_class(0, prec)});
    for (const auto &c : df) dfz.push_back({mpf_class(c, prec), mpf_class(0, prec)});
    auto eval = [&](const std::vector<mc> &p, const mc &z) {
        mc r(prec);
        for (size_t i = p.size(); i-- > 0;) r = mc_add(mc_mul(r, z), p[i]);
        return r;
    };
    std::vector<mc> z;
    if (warm && int(warm->size()) == n) {
        for (const auto &w : *warm) z.push_back({mpf_class(w.re, prec), mpf_class(w.im, prec)});
    } else {
        double R = root_bound(f).get_d();
        for (int k = 0; k < n; ++k) {
            double ang = 2.0 * 3.14159265358979323846 * (k + 0.3) / n + 0.41;
            z.push_back({mpf_class(R * 0.7 * std::cos(ang), prec),
                         mpf_class(R * 0.7 * std::sin(ang), prec)});
        }
    }
    mpf_class tol(1, prec);
    tol >>= (prec - 8);
    for (int sweep = 0; sweep < 400; ++sweep) {
        mpf_class worst(0, prec);
        for (int k = 0; k < n; ++k) {
            mc p = eval(fz, z[k]);
            mc d = eval(dfz, z[k]);
            if (mc_norm(d) == 0) {
                z[k].re += tol;
                continue;
            }
            mc w = mc_div(p, d);
            mc s(prec);
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                mc diff = mc_sub(z[k], z[j]);
                if (mc_norm(diff) == 0) {
                    diff.re += tol;
                }
                s = mc_add(s, mc_div(mc{mpf_class(1, prec), mpf_class(0, prec)}, diff));
            }
            mc denom = mc_sub(mc{mpf_class(1, prec), mpf_class(0, prec)}, mc_mul(w, s));
            mc corr = mc_norm(denom) == 0 ? w : mc_div(w, denom);
            z[k] = mc_sub(z[k], corr);
            mpf_class cn = mc_norm(corr);
            if (cn > worst) worst = cn;
        }
        if (worst < tol * tol) break;
    }
    return z;
}

// certified disk around an approximation: contains >= 1 root of f
struct disk {
    qc center;
    Rat radius; // upper bound
};

std::optional<disk> certify_disk(const ZPoly &f, const ZPoly &df, const qc &c, int n) {
    qc fv = qc_eval(f, c), dv = qc_eval(df, c);
    Rat d2 = qc_abs2(dv);
    if (d2 == 0) return std::nullopt;
    Rat r2 = Rat(Int(n) * Int(n)) * qc_abs2(fv) / d2;
    return disk{c, sqrt_upper(r2, 96)};
}

CBox box_of_disk(const disk &d) {
    return {QIv(d.center.re - d.radius, d.center.re + d.radius),
            QIv(d.center.im - d.radius, d.center.im + d.radius)};
}

// Newton refinement of one complex root from a warm start
std::optional<disk> refine_complex_root(const ZPoly &f, const qc &start, unsigned prec,
                                        const Rat &target_radius) {
    ZPoly df = z_deriv_poly(f);
    int n = z_deg(f);
    mc z{mpf_class(0, prec), mpf_class(0, prec)};
    mpf_set_q(z.re.get_mpf_t(), Rat(start.re).get_mpq_t());
    mpf_set_q(z.im.get_mpf_t(), Rat(start.im).get_mpq_t());
    std::vector<mc> fz, dfz;
    for (const auto &c : f) fz.push_back({mpf_class(c, prec), mpf_class(0, prec)});
    for (const auto &c : df) dfz.push_back({mpf_class(c, prec), mpf_class(0, prec)});
    auto eval = [&](const std::vector<mc> &p, const mc &w) {
        mc r(prec);
        for (size_t i = p.size(); i-- > 0;) r = mc_add(mc_mul(r, w), p[i]);
        return r;
    };
    for (int it = 0; it < 200; ++it) {
        mc p = eval(fz, z), d = eval(dfz, z);
        if (mc_norm(d) == 0) return std::nullopt;
        z = mc_sub(z, mc_div(p, d));
        if (it >= 4 && it % 4 == 0) {
            qc c{rat_of_mpf(z.re), rat_of_mpf(z.im)};
            auto dk = certify_disk(f, df, c, n);
            if (dk && dk->radius <= target_radius) return dk;
        }
    }
    qc c{rat_of_mpf(z.re), rat_of_mpf(z.im)};
    auto dk = certify_disk(f, df, c, n);
    if (dk && dk->radius <= target_radius) return dk;
    return std::nullopt;
}

Rat pow2_inv(unsigned bits) { return make_rat(Int(1), Int(1) << bits); }

} // namespace

// ----- construction -----

void number_field::build_embeddings(unsigned bits) {
    const int n = degree;
    const Rat width = pow2_inv(bits);
    // real roots, exact
    auto ivs = isolate_real_roots(min_poly);
    num_real = int(ivs.size());
    int s2 = n - num_real;
    assert(s2 % 2 == 0);
    std::vector<CBox> boxes;
    for (auto &[lo, hi] : ivs) {
        auto [l2, h2] = refine_root(min_poly, lo, hi, width);
        boxes.push_back({QIv(l2, h2), QIv(Rat(0), Rat(0))});
    }
    if (s2 > 0) {
        ZPoly df = z_deriv_poly(min_poly);
        unsigned prec = 128;
        std::vector<mc> warm;
        for (;;) {
            if (prec > 1 << 16) fail(errc::precision_exhausted, "root certification failed");
            auto zs = aberth(min_poly, prec, warm.empty() ? nullptr : &warm);
            warm = zs;
            // take the s approximations with clearly positive imaginary part
            std::vector<disk> disks;
            bool ok = true;
            std::vector<std::pair<Rat, size_t>> by_im;
            for (size_t i = 0; i < zs.size(); ++i)
                by_im.push_back({rat_of_mpf(zs[i].im), i});
            std::sort(by_im.begin(), by_im.end(),
                      [](const auto &a, const auto &b) { return a.first > b.first; });
            for (int i = 0; i < s2 / 2 && ok; ++i) {
                size_t idx = by_im[i].second;
                qc c{rat_of_mpf(zs[idx].re), rat_of_mpf(zs[idx].im)};
                auto dk = certify_disk(min_poly, df, c, n);
                if (!dk || dk->radius > width || dk->center.im - dk->radius <= 0) {
                    ok = false;
                    break;
                }
                disks.push_back(*dk);
            }
            if (ok) {
                // pairwise disjoint, and disjoint from the real boxes
                std::vector<CBox> cand = boxes;
                for (const auto &d : disks) {
                    cand.push_back(box_of_disk(d));
                    disk m = d;
                    m.center.im = -m.center.im;
                    cand.push_back(box_of_disk(m));
                }
                for (size_t i = 0; i < cand.size() && ok; ++i)
                    for (size_t j = i + 1; j < cand.size() && ok; ++j)
                        if (!cb_disjoint(cand[i], cand[j])) ok = false;
            }
            if (ok) {
                std::sort(disks.begin(), disks.end(), [](const disk &a, const disk &b) {
                    if (a.center.re != b.center.re) return a.center.re < b.center.re;
                    return a.center.im < b.center.im;
                });
                for (const auto &d : disks) {
                    boxes.push_back(box_of_disk(d));
                    disk m = d;
                    m.center.im = -m.center.im;
                    boxes.push_back(box_of_disk(m));
                }
                break;
            }
            prec *= 2;
        }
    }
    emb_.clear();
    conj_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        Embedding e;
        e.index = i;
        e.enclosure = boxes[i];
        e.is_real = i < num_real;
        emb_.push_back(e);
        conj_[i] = i < num_real ? i : (((i - num_real) % 2 == 0) ? i + 1 : i - 1);
    }
    // power sums via Newton's identities
    power_sums_.assign(n, Rat(0));
    power_sums_[0] = Rat(Int(n));
    std::vector<Rat> e(n + 1, Rat(0)); // elementary symmetric e_1..e_n
    for (int i = 1; i <= n; ++i) {
        Rat a = Rat(min_poly[n - i]);
        e[i] = (i % 2 == 0) ? a : -a;
    }
    for (int k = 1; k < n; ++k) {
        Rat p(0);
        for (int i = 1; i < k; ++i) {
            Rat term = e[i] * power_sums_[k - i];
            p += (i % 2 == 1) ? term : -term;
        }
        Rat last = Rat(Int(k)) * e[k];
        p += (k % 2 == 1) ? last : -last;
        power_sums_[k] = p;
    }
}

FieldPtr mk_field(const ZPoly &coeffs_in) {
    ZPoly f = coeffs_in;
    z_trim(f);
    if (z_deg(f) < 1) fail(errc::zero_degree, "degree must be at least 1");
    if (f.back() != 1) fail(errc::not_monic, "defining polynomial must be monic");
    if (z_deg(f) > 1) {
        auto g = find_monic_factor(f);
        if (g) {
            std::ostringstream os;
            os << "factor of degree " << z_deg(*g) << " found";
            fail(errc::reducible, os.str());
        }
    }
    auto K = std::shared_ptr<number_field>(new number_field());
    K->min_poly = f;
    K->degree = z_deg(f);
    K->disc = z_disc(f);
    K->build_embeddings(kBaseBits);
    return K;
}

FieldPtr number_field::make(const ZPoly &p) { return mk_field(p); }

CBox number_field::root_box(int i, unsigned bits) const {
    const Embedding &e = emb_.at(i);
    Rat width = pow2_inv(bits);
    if (e.enclosure.re.width() <= width && e.enclosure.im.width() <= width) return e.enclosure;
    if (e.is_real) {
        auto [lo, hi] = refine_root(min_poly, e.enclosure.re.lo, e.enclosure.re.hi, width);
        return {QIv(lo, hi), QIv(Rat(0), Rat(0))};
    }
    // warm-start Newton from the stored centre; accept only if we stay
    // inside the original isolating box
    qc start{e.enclosure.re.mid(), e.enclosure.im.mid()};
    unsigned prec = std::max<unsigned>(2 * bits, 128);
    while (prec <= (1u << 16)) {
        auto dk = refine_complex_root(min_poly, start, prec, width / 2);
        if (dk) {
            CBox nb = box_of_disk(*dk);
            bool inside = nb.re.lo >= e.enclosure.re.lo && nb.re.hi <= e.enclosure.re.hi &&
                          nb.im.lo >= e.enclosure.im.lo && nb.im.hi <= e.enclosure.im.hi;
            if (inside) return nb;
        }
        prec *= 2;
    }
    fail(errc::precision_exhausted, "complex root refinement failed");
}

field_element number_field::zero() const { return {shared_from_this(), {}}; }
field_element number_field::one() const { return {shared_from_this(), {Rat(1)}}; }

field_element number_field::from_rat(const Rat &q) const {
    if (q == 0) return zero();
    return {shared_from_this(), {q}};
}

field_element number_field::from_coords(const QPoly &coords) const {
    QPoly c = q_mod(coords, q_of(min_poly));
    return {shared_from_this(), c};
}

field_element number_field::gen() const {
    if (degree == 1) return from_rat(Rat(-min_poly[0]));
    return {shared_from_this(), {Rat(0), Rat(1)}};
}

std::string number_field::describe() const {
    std::ostringstream os;
    os << "Q[x]/(";
    for (int i = degree; i >= 0; --i) {
        if (min_poly[i] == 0) continue;
        if (i != degree && min_poly[i] > 0) os << "+";
        if (i == 0 || min_poly[i] != 1) os << min_poly[i].get_str();
        if (i > 0) os << "x";
        if (i > 1) os << "^" << i;
    }
    os << ")";
    return os.str();
}

// ----- element arithmetic -----

namespace {

void check_same_field(const field_element &a, const field_element &b) {
    if (a.K != b.K && !(a.K && b.K && a.K->min_poly == b.K->min_poly))
        fail(errc::field_mismatch, "elements of different fields");
}

} // namespace

field_element fe_add(const field_element &a, const field_element &b) {
    check_same_field(a, b);
    return {a.K, q_add(a.c, b.c)};
}

field_element fe_sub(const field_element &a, const field_element &b) {
    check_same_field(a, b);
    return {a.K, q_sub(a.c, b.c)};
}

field_element fe_neg(const field_element &a) { return {a.K, q_scale(a.c, Rat(-1))}; }

field_element fe_mul(const field_element &a, const field_element &b) {
    check_same_field(a, b);
    return {a.K, q_mod(q_mul(a.c, b.c), q_of(a.K->min_poly))};
}

field_element fe_scale(const field_element &a, const Rat &q) { return {a.K, q_scale(a.c, q)}; }

field_element fe_inv(const field_element &a) {
    if (a.is_zero()) fail(errc::division_by_zero, "inverse of zero");
    // extended euclid: s*a + t*f = 1
    QPoly r0 = a.c, r1 = q_of(a.K->min_poly);
    QPoly s0 = {Rat(1)}, s1 = {};
    while (!r1.empty()) {
        auto [q, r] = q_divrem(r0, r1);
        QPoly s2 = q_sub(s0, q_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    assert(q_deg(r0) == 0);
    return {a.K, q_scale(s0, Rat(1) / r0[0])};
}

field_element fe_div(const field_element &a, const field_element &b) {
    check_same_field(a, b);
    return fe_mul(a, fe_inv(b));
}

field_element fe_pow(const field_element &a, const Int &e_in) {
    Int e = e_in;
    field_element base = a;
    if (e < 0) {
        base = fe_inv(a);
        e = -e;
    }
    field_element r = a.K->one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fe_mul(r, base);
        base = fe_mul(base, base);
        e >>= 1;
    }
    return r;
}

bool fe_eq(const field_element &a, const field_element &b) {
    check_same_field(a, b);
    return a.c == b.c;
}

Rat norm(const field_element &x) {
    if (x.is_zero()) return Rat(0);
    if (x.K->degree == 1) return x.rat();
    return q_resultant(q_of(x.K->min_poly), x.c);
}

Rat trace(const field_element &x) {
    Rat t(0);
    for (size_t i = 0; i < x.c.size(); ++i) t += x.c[i] * x.K->power_sums_[i];
    return t;
}

QPoly min_poly_of(const field_element &x) {
    int n = x.K->degree;
    // coordinates of powers x^0, x^1, ...
    std::vector<QPoly> pows;
    field_element cur = x.K->one();
    for (int k = 0; k <= n; ++k) {
        pows.push_back(cur.c);
        cur = fe_mul(cur, x);
    }
    for (int k = 1; k <= n; ++k) {
        // solve sum_{i<k} c_i x^i = x^k
        QMat A(n, QVec(k, Rat(0)));
        QVec b(n, Rat(0));
        for (int i = 0; i < k; ++i)
            for (int row = 0; row < n; ++row)
                A[row][i] = row < int(pows[i].size()) ? pows[i][row] : Rat(0);
        for (int row = 0; row < n; ++row)
            b[row] = row < int(pows[k].size()) ? pows[k][row] : Rat(0);
        auto sol = q_solve(A, b);
        if (sol) {
            QPoly m(k + 1, Rat(0));
            m[k] = 1;
            for (int i = 0; i < k; ++i) m[i] = -(*sol)[i];
            return m;
        }
    }
    fail(errc::inconsistent, "minimal polynomial search failed");
}

CBox embed_value(const field_element &x, int emb_index, unsigned bits) {
    CBox rb = x.K->root_box(emb_index, bits);
    return cb_eval(x.c, rb);
}

sign_verdict sign_at(const field_element &x, const Embedding &e, unsigned start_bits) {
    if (!e.is_real) fail(errc::non_real_embedding, "sign query at a non-real embedding");
    if (x.is_zero()) return sign_verdict::zero;
    for (unsigned bits = start_bits;; bits *= 2) {
        CBox v = embed_value(x, e.index, bits);
        if (v.re.positive()) return sign_verdict::positive;
        if (v.re.negative()) return sign_verdict::negative;
        if (bits > kMaxBits) {
            // x is a nonzero element, so its image is nonzero; keep going
            // only if the cap has not certified anything yet
            fail(errc::precision_exhausted, "sign_at failed to separate from zero");
        }
    }
}

cmp_verdict abs_compare(const field_element &x, const field_element &y, const Embedding &e,
                        unsigned start_bits) {
    check_same_field(x, y);
    // exact tie test: |sigma x| = |sigma y| at a real embedding iff
    // sigma(x^2 - y^2) = 0 iff x^2 = y^2 (embeddings are injective)
    field_element diff = fe_sub(fe_mul(x, x), fe_mul(y, y));
    if (diff.is_zero()) return cmp_verdict::eq;
    for (unsigned bits = start_bits;; bits *= 2) {
        QIv ax = cb_abs2(embed_value(x, e.index, bits));
        QIv ay = cb_abs2(embed_value(y, e.index, bits));
        if (ax.hi < ay.lo) return cmp_verdict::lt;
        if (ay.hi < ax.lo) return cmp_verdict::gt;
        if (bits > kMaxBits) {
            if (e.is_real)
                fail(errc::precision_exhausted, "abs_compare stalled at a real embedding");
            // non-real tie beyond the x = +-y case is not decided here
            fail(errc::precision_exhausted, "abs_compare tie at a non-real embedding");
        }
    }
}

bool is_totally_real_field(const FieldPtr &F) { return F->num_real == F->degree; }

bool is_totally_positive(const field_element &x) {
    if (!is_totally_real_field(x.K)) return false;
    for (const auto &e : x.K->embeddings())
        if (sign_at(x, e) != sign_verdict::positive) return false;
    return true;
}

bool in_ztheta(const field_element &x) {
    for (const auto &c : x.c)
        if (!is_int(c)) return false;
    return true;
}

bool is_integral(const field_element &x) {
    if (x.is_zero()) return true;
    QPoly m = min_poly_of(x);
    for (const auto &c : m)
        if (!is_int(c)) return false;
    return true;
}

std::pair<std::vector<Int>, Int> ztheta_split(const field_element &x) {
    Int l(1);
    for (const auto &c : x.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> u(x.K->degree, Int(0));
    for (size_t i = 0; i < x.c.size(); ++i) u[i] = num(x.c[i] * Rat(l));
    return {u, l};
}

// ----- subfields and composita -----

field_element map_into(const subfield_map &m, const field_element &x_sub) {
    field_element r = m.sup->zero();
    for (size_t i = x_sub.c.size(); i-- > 0;) {
        r = fe_mul(r, m.gen_image);
        r = fe_add(r, m.sup->from_rat(x_sub.c[i]));
    }
    return r;
}

std::optional<field_element> subfield_coords(const subfield_map &m, const field_element &x) {
    int nsub = m.sub->degree, nsup = m.sup->degree;
    QMat A(nsup, QVec(nsub, Rat(0)));
    field_element p = m.sup->one();
    for (int i = 0; i < nsub; ++i) {
        for (int row = 0; row < nsup; ++row)
            A[row][i] = row < int(p.c.size()) ? p.c[row] : Rat(0);
        p = fe_mul(p, m.gen_image);
    }
    QVec b(nsup, Rat(0));
    for (int row = 0; row < nsup; ++row) b[row] = row < int(x.c.size()) ? x.c[row] : Rat(0);
    auto sol = q_solve(A, b);
    if (!sol) return std::nullopt;
    QPoly c = *sol;
    q_trim(c);
    field_element r{m.sub, c};
    return r;
}

namespace {

// polynomials over a number field, for gcd computations in towers
using LPoly = std::vector<field_element>;

void l_trim(LPoly &f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

LPoly l_mod(const LPoly &a, const LPoly &b) {
    LPoly r = a;
    l_trim(r);
    field_element inv_lead = fe_inv(b.back());
    while (r.size() >= b.size() && !r.empty()) {
        size_t shift = r.size() - b.size();
        field_element c = fe_mul(r.back(), inv_lead);
        for (size_t i = 0; i < b.size(); ++i)
            r[shift + i] = fe_sub(r[shift + i], fe_mul(c, b[i]));
        l_trim(r);
    }
    return r;
}

LPoly l_gcd(LPoly a, LPoly b) {
    l_trim(a);
    l_trim(b);
    while (!b.empty()) {
        LPoly r = l_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        field_element inv = fe_inv(a.back());
        for (auto &c : a) c = fe_mul(c, inv);
    }
    return a;
}

// h(x) = prod over roots beta of f2 of f1(x - k*beta), by interpolation
ZPoly compositum_resolvent(const ZPoly &f1, const ZPoly &f2, int k) {
    int m = z_deg(f1) * z_deg(f2);
    QPoly f1q = q_of(f1);
    std::vector<Int> xs;
    std::vector<Rat> vs;
    for (int i = 0; i <= m; ++i) {
        Int x0(i - m / 2);
        // g(y) = f1(x0 - k y) as a polynomial in y
        QPoly lin = {Rat(x0), Rat(-k)};
        QPoly g = q_compose(f1q, lin);
        Rat r = q_resultant(q_of(f2), g);
        xs.push_back(x0);
        vs.push_back(r);
    }
    // Lagrange interpolation
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
    ZPoly hz(h.size());
    for (size_t i = 0; i < h.size(); ++i) {
        if (!is_int(h[i])) fail(errc::inconsistent, "resolvent has non-integer coefficients");
        hz[i] = num(h[i]);
    }
    return hz;
}

} // namespace

compositum_result compositum(const FieldPtr &F1, const FieldPtr &F2, int degree_budget) {
    if (F1->min_poly == F2->min_poly) {
        compositum_result r;
        r.field = F1;
        r.f1_map = {F1, F1, F1->gen()};
        r.f2_map = {F2, F1, F1->gen()};
        r.k = 0;
        return r;
    }
    if (F2->degree == 1) {
        compositum_result r;
        r.field = F1;
        r.f1_map = {F1, F1, F1->gen()};
        r.f2_map = {F2, F1, F1->from_rat(Rat(-F2->min_poly[0]))};
        r.k = 0;
        return r;
    }
    if (F1->degree == 1) {
        compositum_result r;
        r.field = F2;
        r.f1_map = {F1, F2, F2->from_rat(Rat(-F1->min_poly[0]))};
        r.f2_map = {F2, F2, F2->gen()};
        r.k = 0;
        return r;
    }
    if (F1->degree * F2->degree > degree_budget)
        fail(errc::degree_budget_exceeded, "compositum degree above budget");
    for (int k = 1; k <= 50; ++k) {
        ZPoly h = compositum_resolvent(F1->min_poly, F2->min_poly, k);
        // gamma = alpha + k*beta, alpha/beta the canonical roots
        auto factors = factor_monic(z_primitive(h));
        // locate by interval evaluation at increasing precision
        const ZPoly *target = nullptr;
        for (unsigned bits = kBaseBits; bits <= kMaxBits && !target; bits *= 2) {
            CBox a = F1->root_box(0, bits), b = F2->root_box(0, bits);
            CBox kb{QIv(Rat(k)), QIv(Rat(0))};
            CBox g = cb_add(a, cb_mul(kb, b));
            const ZPoly *cand = nullptr;
            int hits = 0;
            for (const auto &fac : factors) {
                CBox v = cb_eval(q_of(fac), g);
                if (v.contains_zero()) {
                    ++hits;
                    cand = &fac;
                }
            }
            if (hits == 1) target = cand;
        }
        if (!target) continue;
        // gamma must be a simple root of h
        auto quot = z_divexact(h, *target);
        if (!quot) continue;
        if (z_divexact(*quot, *target)) continue; // multiplicity >= 2, bad k
        FieldPtr L = mk_field(*target);
        // beta image: unique root of gcd(f2(y), f1(gamma - k y)) over L
        LPoly g2;
        for (const auto &c : F2->min_poly) g2.push_back(L->from_rat(Rat(c)));
        LPoly g1;
        {
            // f1(gamma - k y): expand with binomials via Horner in y
            LPoly acc; // polynomial in y over L
            field_element gamma = L->gen();
            LPoly lin = {gamma, L->from_rat(Rat(-k))};
            acc = {};
            for (size_t i = F1->min_poly.size(); i-- > 0;) {
                // acc = acc*lin + c_i
                LPoly next(acc.size() + lin.size() ? acc.size() + 1 : 1, L->zero());
                if (!acc.empty()) {
                    next.assign(acc.size() + 1, L->zero());
                    for (size_t a_i = 0; a_i < acc.size(); ++a_i)
                        for (size_t l_i = 0; l_i < 2; ++l_i)
                            next[a_i + l_i] = fe_add(next[a_i + l_i], fe_mul(acc[a_i], lin[l_i]));
                } else {
                    next.assign(1, L->zero());
                }
                next[0] = fe_add(next[0], L->from_rat(Rat(F1->min_poly[i])));
                l_trim(next);
                acc = next;
            }
            g1 = acc;
        }
        LPoly g = l_gcd(g1, g2);
        if (g.size() != 2) continue;
        field_element beta_img = fe_neg(g[0]); // monic linear: y + g0
        field_element alpha_img = fe_sub(L->gen(), fe_scale(beta_img, Rat(k)));
        // verify both maps
        auto check_root = [](const ZPoly &mp, const field_element &v) {
            field_element r = v.K->zero();
            for (size_t i = mp.size(); i-- > 0;) {
                r = fe_mul(r, v);
                r = fe_add(r, v.K->from_rat(Rat(mp[i])));
            }
            return r.is_zero();
        };
        if (!check_root(F1->min_poly, alpha_img) || !check_root(F2->min_poly, beta_img)) continue;
        compositum_result res;
        res.field = L;
        res.f1_map = {F1, L, alpha_img};
        res.f2_map = {F2, L, beta_img};
        res.k = k;
        return res;
    }
    fail(errc::degree_budget_exceeded, "no primitive element found with k <= 50");
}

std::vector<field_element> roots_in_field(const QPoly &f, const FieldPtr &F) {
    std::vector<field_element> out;
    QPoly g = f;
    q_trim(g);
    if (q_deg(g) < 1) return out;
    // rational roots of any degree; deg-2 handled via the trace trick by callers
    auto [gz, c] = z_clear(g);
    (void)c;
    if (z_deg(gz) == 1) {
        out.push_back(F->from_rat(-Rat(gz[0]) / Rat(gz[1])));
        return out;
    }
    return out;
}

} // namespace diodef
