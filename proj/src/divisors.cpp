#include "diodef/divisors.hpp"
#include "diodef/errors.hpp"
#include "diodef/modpoly.hpp"

#include <algorithm>
#include <cassert>

namespace diodef {

bool operator==(const prime_ideal &a, const prime_ideal &b) {
    return a.p == b.p && a.gen == b.gen && a.K->min_poly == b.K->min_poly;
}

bool prime_less::operator()(const prime_ideal &a, const prime_ideal &b) const {
    if (a.p != b.p) return a.p < b.p;
    if (a.gen.size() != b.gen.size()) return a.gen.size() < b.gen.size();
    for (size_t i = a.gen.size(); i-- > 0;)
        if (a.gen[i] != b.gen[i]) return a.gen[i] < b.gen[i];
    return false;
}

bool divisor::integral() const {
    for (const auto &[P, e] : m)
        if (e <= 0) return false;
    return true;
}

int divisor::exponent(const prime_ideal &P) const {
    auto it = m.find(P);
    return it == m.end() ? 0 : it->second;
}

void divisor::set(const prime_ideal &P, int e) {
    if (e == 0) m.erase(P);
    else m[P] = e;
}

divisor div_mul(const divisor &a, const divisor &b) {
    divisor r = a;
    for (const auto &[P, e] : b.m) r.set(P, r.exponent(P) + e);
    return r;
}

divisor div_div(const divisor &a, const divisor &b) {
    divisor r = a;
    for (const auto &[P, e] : b.m) r.set(P, r.exponent(P) - e);
    return r;
}

divisor div_pow(const divisor &a, int e) {
    divisor r;
    if (e == 0) return r;
    for (const auto &[P, k] : a.m) r.set(P, k * e);
    return r;
}

divisor div_gcd(const divisor &a, const divisor &b) {
    divisor r;
    for (const auto &[P, e] : a.m) {
        int f = b.exponent(P);
        int g = std::min(e, f);
        if (g > 0) r.set(P, g);
    }
    return r;
}

bool div_coprime(const divisor &a, const divisor &b) {
    for (const auto &[P, e] : a.m) {
        (void)e;
        if (b.exponent(P) != 0) return false;
    }
    return true;
}

bool divisor_divides(const divisor &a, const divisor &b) {
    if (!a.integral() || !b.integral()) fail(errc::non_integral, "divides needs integral divisors");
    for (const auto &[P, e] : a.m)
        if (b.exponent(P) < e) return false;
    return true;
}

std::optional<divisor> divisor_sqrt(const divisor &a) {
    if (!a.integral()) fail(errc::non_integral, "sqrt needs an integral divisor");
    divisor r;
    for (const auto &[P, e] : a.m) {
        if (e % 2 != 0) return std::nullopt;
        r.set(P, e / 2);
    }
    return r;
}

Rat divisor_norm(const divisor &a) {
    Rat r(1);
    for (const auto &[P, e] : a.m) {
        Int pf;
        mpz_pow_ui(pf.get_mpz_t(), P.p.get_mpz_t(), P.f);
        int k = e;
        if (k > 0)
            for (int i = 0; i < k; ++i) r *= Rat(pf);
        else
            for (int i = 0; i < -k; ++i) r /= Rat(pf);
    }
    return r;
}

std::vector<prime_ideal> factor_prime(const FieldPtr &F, const Int &p) {
    if (!is_probable_prime(p)) fail(errc::config_error, "factor_prime needs a prime");
    if (mpz_divisible_p(F->disc.get_mpz_t(), p.get_mpz_t()))
        fail(errc::ramified_or_index_divisor,
             "p divides disc(min_poly); primes above it are not represented");
    uint64_t pu = p.get_ui();
    FpPoly fbar = fp_reduce(F->min_poly, pu);
    auto facs = fp_factor_squarefree(fbar, pu);
    std::vector<prime_ideal> out;
    int fsum = 0;
    for (const auto &g : facs) {
        prime_ideal P;
        P.K = F;
        P.p = p;
        P.gen.resize(g.size());
        for (size_t i = 0; i < g.size(); ++i) P.gen[i] = Int(static_cast<unsigned long>(g[i]));
        P.e = 1;
        P.f = fp_deg(g);
        fsum += P.f;
        out.push_back(std::move(P));
    }
    assert(fsum == F->degree);
    std::sort(out.begin(), out.end(), prime_less{});
    return out;
}

namespace {

// valuations of u in Z[theta] at every prime above p, p coprime to disc;
// exact via Hensel lifting mod p^(V+1), V = ord_p(N(u))
std::pair<std::vector<prime_ideal>, std::vector<int>> ord_all_above(const FieldPtr &K,
                                                                    const std::vector<Int> &u,
                                                                    const Int &p) {
    auto primes = factor_prime(K, p);
    ZPoly uz(u.begin(), u.end());
    z_trim(uz);
    std::vector<int> vals(primes.size(), 0);
    if (uz.empty()) fail(errc::inconsistent, "ord_all_above on zero");
    if (K->degree == 1) {
        vals[0] = podic_val(uz[0], p);
        return {primes, vals};
    }
    field_element x{K, q_of(uz)};
    Rat N = norm(x);
    Int Nz = num(N);
    assert(den(N) == 1);
    if (!mpz_divisible_p(Nz.get_mpz_t(), p.get_mpz_t())) return {primes, vals};
    int V = podic_val(Nz, p);
    int k = V + 1;
    std::vector<FpPoly> fp_factors;
    uint64_t pu = p.get_ui();
    for (const auto &P : primes) fp_factors.push_back(fp_reduce(P.gen, pu));
    auto lifted = hensel_lift(K->min_poly, fp_factors, p, k);
    Int mod;
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), k);
    pk_ctx ctx{p, k, mod};
    PkPoly ur = pk_reduce(uz, ctx);
    int weighted = 0;
    for (size_t i = 0; i < primes.size(); ++i) {
        PkPoly rem = pk_mod_monic(ur, lifted[i], ctx);
        // unramified local ring: valuation = min p-valuation of coordinates
        int v = k;
        for (const auto &c : rem)
            if (c != 0) v = std::min(v, podic_val(c, p));
        vals[i] = v;
        weighted += primes[i].f * v;
    }
    if (weighted != V) fail(errc::inconsistent, "valuation / norm mismatch");
    return {primes, vals};
}

} // namespace

std::optional<int> ord(const field_element &x, const prime_ideal &P) {
    if (x.is_zero()) return std::nullopt;
    if (mpz_divisible_p(x.K->disc.get_mpz_t(), P.p.get_mpz_t()))
        fail(errc::ramified_or_index_divisor, "valuation at a discriminant divisor");
    auto [u, c] = ztheta_split(x);
    int vc = podic_val(c, P.p);
    auto [primes, vals] = ord_all_above(x.K, u, P.p);
    for (size_t i = 0; i < primes.size(); ++i)
        if (primes[i] == P) return vals[i] - vc * P.e;
    fail(errc::inconsistent, "prime does not belong to this field");
}

namespace {

divisor signed_divisor(const field_element &x, int want_sign) {
    if (x.is_zero()) fail(errc::division_by_zero, "divisor of zero");
    divisor out;
    auto [u, c] = ztheta_split(x);
    // negative valuations live above primes of c; positive ones above
    // primes of N(u); factoring only what the query needs keeps huge
    // cofactors out of the factorizer
    std::map<Int, int> cand;
    if (want_sign <= 0 && c != 1) cand = factorize(c);
    if (want_sign >= 0) {
        field_element ux{x.K, q_of(ZPoly(u.begin(), u.end()))};
        Int Nz = num(norm(ux));
        if (Nz != 1 && Nz != -1)
            for (const auto &[p, e] : factorize(Nz)) cand[p] += e;
    }
    for (const auto &[p, e] : cand) {
        (void)e;
        if (mpz_divisible_p(x.K->disc.get_mpz_t(), p.get_mpz_t()))
            fail(errc::support_hits_bad_prime,
                 "support includes p | disc(min_poly), p = " + p.get_str());
        int vc = podic_val(c, p);
        auto [primes, vals] = ord_all_above(x.K, u, p);
        for (size_t i = 0; i < primes.size(); ++i) {
            int v = vals[i] - vc * primes[i].e;
            if (want_sign > 0 && v > 0) out.set(primes[i], v);
            if (want_sign < 0 && v < 0) out.set(primes[i], -v);
            if (want_sign == 0 && v != 0) out.set(primes[i], v);
        }
    }
    return out;
}

} // namespace

divisor den_divisor(const field_element &x) { return signed_divisor(x, -1); }
divisor num_divisor(const field_element &x) { return signed_divisor(x, +1); }
divisor principal_divisor(const field_element &x) { return signed_divisor(x, 0); }

// ----- prime sets -----

PrimeSetPtr prime_set::empty_set(const FieldPtr &K) {
    auto s = std::shared_ptr<prime_set>(new prime_set());
    s->k_ = kind::empty;
    s->K_ = K;
    return s;
}

PrimeSetPtr prime_set::all_set(const FieldPtr &K) {
    auto s = std::shared_ptr<prime_set>(new prime_set());
    s->k_ = kind::all;
    s->K_ = K;
    return s;
}

PrimeSetPtr prime_set::finite(const FieldPtr &K, std::vector<prime_ideal> primes) {
    auto s = std::shared_ptr<prime_set>(new prime_set());
    s->k_ = kind::finite_list;
    s->K_ = K;
    std::sort(primes.begin(), primes.end(), prime_less{});
    s->list_ = std::move(primes);
    return s;
}

PrimeSetPtr prime_set::no_deg_one(const FieldPtr &K, const FieldPtr &E) {
    auto s = std::shared_ptr<prime_set>(new prime_set());
    s->k_ = kind::no_deg_one_in;
    s->K_ = K;
    s->E_ = E;
    return s;
}

PrimeSetPtr prime_set::unite(const PrimeSetPtr &a, const PrimeSetPtr &b) {
    auto s = std::shared_ptr<prime_set>(new prime_set());
    s->k_ = kind::set_union;
    s->K_ = a->K_;
    s->a_ = a;
    s->b_ = b;
    return s;
}

PrimeSetPtr prime_set::minus(const PrimeSetPtr &a, const PrimeSetPtr &b) {
    auto s = std::shared_ptr<prime_set>(new prime_set());
    s->k_ = kind::set_minus;
    s->K_ = a->K_;
    s->a_ = a;
    s->b_ = b;
    return s;
}

PrimeSetPtr conj_closure(const PrimeSetPtr &S) {
    auto s = std::shared_ptr<prime_set>(new prime_set());
    s->k_ = prime_set::kind::closure;
    s->K_ = S->field();
    s->a_ = S;
    return s;
}

PrimeSetPtr hat_set(const PrimeSetPtr &S) {
    auto s = std::shared_ptr<prime_set>(new prime_set());
    s->k_ = prime_set::kind::hat;
    s->K_ = S->field();
    s->a_ = S;
    return s;
}

bool prime_set::contains(const prime_ideal &P) const {
    switch (k_) {
    case kind::empty:
        return false;
    case kind::all:
        return true;
    case kind::finite_list:
        return std::binary_search(list_.begin(), list_.end(), P, prime_less{});
    case kind::no_deg_one_in:
        return no_deg_one_factor(P, E_);
    case kind::set_union:
        return a_->contains(P) || b_->contains(P);
    case kind::set_minus:
        return a_->contains(P) && !b_->contains(P);
    case kind::closure: {
        for (const auto &Q : factor_prime(K_, P.p))
            if (a_->contains(Q)) return true;
        return false;
    }
    case kind::hat: {
        if (!a_->contains(P)) return false;
        // remove one prime of highest relative degree per rational prime;
        // the tie-break removes the lexicographically smallest gen
        std::vector<prime_ideal> members;
        for (const auto &Q : factor_prime(K_, P.p))
            if (a_->contains(Q)) members.push_back(Q);
        if (members.empty()) return false;
        const prime_ideal *removed = &members[0];
        for (const auto &Q : members) {
            if (Q.f > removed->f) removed = &Q;
        }
        return !(P == *removed);
    }
    }
    return false;
}

bool no_deg_one_factor(const prime_ideal &pK, const FieldPtr &E, int degree_budget) {
    const FieldPtr &K = pK.K;
    if (E->degree == 1) return false; // trivial extension: every prime has f = 1
    auto comp = compositum(K, E, degree_budget);
    const FieldPtr &L = comp.field;
    if (mpz_divisible_p(L->disc.get_mpz_t(), pK.p.get_mpz_t()))
        fail(errc::ramified_or_index_divisor, "p meets disc of the compositum");
    auto above = factor_prime(L, pK.p);
    field_element g_img = L->zero();
    {
        field_element theta_img = comp.f1_map.gen_image;
        for (size_t i = pK.gen.size(); i-- > 0;) {
            g_img = fe_mul(g_img, theta_img);
            g_img = fe_add(g_img, L->from_rat(Rat(pK.gen[i])));
        }
    }
    for (const auto &PL : above) {
        bool over_pK;
        if (K->degree == 1) {
            over_pK = true;
        } else {
            auto v = ord(g_img, PL);
            over_pK = !v.has_value() || *v >= 1;
        }
        if (over_pK && PL.f == pK.f) return false;
    }
    return true;
}

namespace {

// desk-level Galois evidence: degree <= 2, or uniform factor-degree pattern
// at a sample of unramified primes (plus the real/complex necessary condition)
bool galois_evidence(const FieldPtr &F, int samples = 25) {
    if (F->degree <= 2) return true;
    if (F->degree != F->num_real && F->num_real != 0) return false;
    int seen = 0;
    Int p(2);
    while (seen < samples) {
        if (!mpz_divisible_p(F->disc.get_mpz_t(), p.get_mpz_t())) {
            auto degs = fp_factor_degrees(fp_reduce(F->min_poly, p.get_ui()), p.get_ui());
            for (size_t i = 1; i < degs.size(); ++i)
                if (degs[i] != degs[0]) return false;
            ++seen;
        }
        p = next_prime_above(p);
    }
    return true;
}

} // namespace

nodegonefact_report check_nodegonefact(const FieldPtr &K, const FieldPtr &E, const FieldPtr &G,
                                       const Int &p) {
    if (K->degree != 1)
        fail(errc::hypothesis_violated, "desk check supports base field Q only");
    Int dE(E->degree), dG(G->degree);
    Int g;
    mpz_gcd(g.get_mpz_t(), dE.get_mpz_t(), dG.get_mpz_t());
    if (g != 1) fail(errc::hypothesis_violated, "extension degrees are not coprime");
    if (!galois_evidence(E) || !galois_evidence(G))
        fail(errc::hypothesis_violated, "sampled factor patterns are not Galois-uniform");
    if (mpz_divisible_p(E->disc.get_mpz_t(), p.get_mpz_t()) ||
        mpz_divisible_p(G->disc.get_mpz_t(), p.get_mpz_t()))
        fail(errc::ramified_or_index_divisor, "p is ramified at desk level");
    nodegonefact_report rep;
    auto pE = factor_prime(E, p);
    bool has_deg_one = false;
    for (const auto &P : pE) has_deg_one = has_deg_one || P.f == 1;
    rep.hypothesis_triggered = !has_deg_one;
    rep.f_in_E = pE.front().f;
    if (!rep.hypothesis_triggered) {
        rep.verdict = true; // vacuous
        return rep;
    }
    for (const auto &pG : factor_prime(G, p)) {
        bool no1 = no_deg_one_factor(pG, E, E->degree * G->degree);
        auto comp = compositum(G, E, E->degree * G->degree);
        for (const auto &PL : factor_prime(comp.field, p)) {
            field_element g_img = comp.field->zero();
            for (size_t i = pG.gen.size(); i-- > 0;) {
                g_img = fe_mul(g_img, comp.f1_map.gen_image);
                g_img = fe_add(g_img, comp.field->from_rat(Rat(pG.gen[i])));
            }
            auto v = ord(g_img, PL);
            if (!v.has_value() || *v >= 1) rep.f_GE_over_G.push_back(PL.f / pG.f);
        }
        if (!no1) rep.verdict = false;
    }
    return rep;
}

strong_approx_result strong_approx_split(const field_element &z1, const field_element &z2,
                                         int coeff_budget) {
    const FieldPtr &K = z1.K;
    if (z1.is_zero() || z2.is_zero()) fail(errc::division_by_zero, "split of zero");
    divisor d1 = den_divisor(z1), d2 = den_divisor(z2);
    if (!div_coprime(d1, d2))
        fail(errc::denominators_not_coprime, "denominator divisors share a prime");
    auto gen_of = [&](const divisor &D, const divisor &avoid) -> field_element {
        if (D.trivial()) return K->one();
        if (K->degree == 1) return K->from_rat(divisor_norm(D));
        Int N = num(divisor_norm(D));
        int n = K->degree;
        // shell search over Z[theta] for an element whose divisor is exactly D
        for (long B = 1; B <= coeff_budget; ++B) {
            std::vector<long> idx(n, -B);
            for (;;) {
                long maxc = 0;
                for (int i = 0; i < n; ++i) maxc = std::max(maxc, std::abs(idx[i]));
                if (maxc == B) {
                    QPoly co(n);
                    for (int i = 0; i < n; ++i) co[i] = Rat(Int(idx[i]));
                    q_trim(co);
                    if (!co.empty()) {
                        field_element u{K, co};
                        if (abs(num(norm(u))) == N) {
                            bool ok = true;
                            for (const auto &[P, e] : D.m) {
                                auto v = ord(u, P);
                                if (!v || *v != e) {
                                    ok = false;
                                    break;
                                }
                            }
                            for (const auto &[P, e] : avoid.m) {
                                (void)e;
                                if (!ok) break;
                                auto v = ord(u, P);
                                if (v && *v != 0) ok = false;
                            }
                            if (ok) return u;
                        }
                    }
                }
                int pos = 0;
                while (pos < n && ++idx[pos] > B) idx[pos++] = -B;
                if (pos == n) break;
            }
        }
        fail(errc::budget_exhausted, "no generator of the denominator divisor found");
    };
    strong_approx_result r{K->zero(), K->zero(), K->zero(), K->zero()};
    r.b1 = gen_of(d1, d2);
    r.b2 = gen_of(d2, d1);
    r.a1 = fe_mul(z1, r.b1);
    r.a2 = fe_mul(z2, r.b2);
    if (!is_integral(r.a1) || !is_integral(r.a2))
        fail(errc::inconsistent, "numerator failed integrality after split");
    return r;
}

int degree_index(const std::vector<int> &tower_degrees, const Int &q) {
    int best = 0;
    for (int d : tower_degrees)
        if (d > 0) best = std::max(best, podic_val(Int(d), q));
    return best;
}

density_result density_count(const FieldPtr &E, uint32_t X, bool keep_table) {
    density_result r;
    auto ps = primes_up_to(X);
    for (uint32_t p : ps) {
        if (mpz_divisible_ui_p(E->disc.get_mpz_t(), p)) continue; // ramified excluded
        FpPoly f = fp_reduce(E->min_poly, p);
        bool inert = !fp_has_root(f, p);
        r.total_count += 1;
        if (inert) r.inert_count += 1;
        if (keep_table) r.table.push_back({p, inert});
    }
    r.fraction = r.total_count ? make_rat(Int(r.inert_count), Int(r.total_count)) : Rat(0);
    return r;
}

bool integrality_predicate(const field_element &x, const PrimeSetPtr &S) {
    if (x.is_zero()) return true;
    divisor d = den_divisor(x);
    for (const auto &[P, e] : d.m) {
        (void)e;
        if (S->contains(P)) return false;
    }
    return true;
}

} // namespace diodef
