#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include "diodef/divisors.hpp"
#include "diodef/errors.hpp"

using namespace diodef;

static FieldPtr Qf() { return mk_field({Int(-1), Int(1)}); }
static FieldPtr Qsqrt2() { return mk_field({Int(-2), Int(0), Int(1)}); }
static FieldPtr Cubic() { return mk_field({Int(-1), Int(-3), Int(0), Int(1)}); }

TEST_CASE("factor_prime on Q(sqrt2)") {
    auto K = Qsqrt2();
    auto p7 = factor_prime(K, Int(7));
    REQUIRE(p7.size() == 2);
    CHECK(p7[0].f == 1);
    CHECK(p7[1].f == 1);
    auto p3 = factor_prime(K, Int(3));
    REQUIRE(p3.size() == 1);
    CHECK(p3[0].f == 2);
    CHECK_THROWS_AS(factor_prime(K, Int(2)), nt_error);
}

TEST_CASE("valuations") {
    auto K = Qsqrt2();
    auto p7 = factor_prime(K, Int(7));
    auto seven = K->from_rat(Rat(7));
    CHECK(*ord(seven, p7[0]) == 1);
    CHECK(*ord(seven, p7[1]) == 1);
    CHECK(*ord(K->one(), p7[0]) == 0);
    auto p3 = factor_prime(K, Int(3));
    auto t = fe_add(K->from_rat(Rat(3)), K->gen()); // 3+sqrt2, norm 7
    CHECK(*ord(t, p3[0]) == 0);
    CHECK(!ord(K->zero(), p3[0]).has_value());
    // valuation sum identity on random elements
    splitmix64 rng(11);
    for (int i = 0; i < 100; ++i) {
        field_element x{K, {rng.small_rat(9), rng.small_rat(9)}};
        q_trim(x.c);
        if (x.is_zero()) continue;
        try {
            divisor d = principal_divisor(x);
            Rat n = norm(x);
            for (const Int &p : {Int(3), Int(5), Int(7), Int(11)}) {
                int lhs = 0;
                for (const auto &[P, e] : d.m)
                    if (P.p == p) lhs += P.f * e;
                CHECK(lhs == podic_val(n, p));
            }
        } catch (const nt_error &e) {
            CHECK(e.code() == errc::support_hits_bad_prime);
        }
    }
}

TEST_CASE("num/den divisors") {
    auto Q = Qf();
    auto q14 = Q->from_rat(Rat(1, 4));
    divisor d = den_divisor(q14);
    REQUIRE(d.m.size() == 1);
    CHECK(d.m.begin()->second == 2);
    CHECK(d.m.begin()->first.p == 2);
    CHECK(num_divisor(q14).trivial());
    auto K = Qsqrt2();
    auto x = fe_div(fe_add(K->one(), K->gen()), K->from_rat(Rat(7))); // (1+s)/7
    divisor dx = den_divisor(x);
    CHECK(dx.m.size() == 2); // both primes above 7
    CHECK(num_divisor(x).trivial());
    CHECK(den_divisor(K->one()).trivial());
    CHECK(num_divisor(K->one()).trivial());
}

TEST_CASE("divisor semigroup ops") {
    auto Q = Qf();
    auto p2 = factor_prime(Q, Int(2))[0];
    divisor a, b;
    a.set(p2, 2);
    b.set(p2, 4);
    CHECK(divisor_divides(a, b));
    CHECK(!divisor_divides(b, a));
    auto s = divisor_sqrt(b);
    REQUIRE(s);
    CHECK(s->exponent(p2) == 2);
    divisor c;
    c.set(p2, 3);
    CHECK(!divisor_sqrt(c).has_value());
    auto K = Qsqrt2();
    auto p3 = factor_prime(K, Int(3))[0];
    divisor n3;
    n3.set(p3, 1);
    CHECK(divisor_norm(n3) == Rat(9));
}

TEST_CASE("prime sets, closure and hat") {
    auto K = Qsqrt2();
    auto p7 = factor_prime(K, Int(7));
    auto S = prime_set::finite(K, {p7[0]});
    CHECK(S->contains(p7[0]));
    CHECK(!S->contains(p7[1]));
    auto cl = conj_closure(S);
    CHECK(cl->contains(p7[0]));
    CHECK(cl->contains(p7[1]));
    auto cl2 = conj_closure(cl); // idempotent
    CHECK(cl2->contains(p7[0]));
    CHECK(cl2->contains(p7[1]));
    // hat on the full pair removes the lexicographically smallest gen
    auto full = prime_set::finite(K, {p7[0], p7[1]});
    auto h = hat_set(full);
    CHECK(!h->contains(p7[0]));
    CHECK(h->contains(p7[1]));
    auto empty = prime_set::empty_set(K);
    CHECK(!conj_closure(empty)->contains(p7[0]));
}

TEST_CASE("no_deg_one_factor") {
    auto Q = Qf();
    auto E = Cubic();
    auto p2 = factor_prime(Q, Int(2))[0];
    CHECK(no_deg_one_factor(p2, E));
    auto p17 = factor_prime(Q, Int(17))[0];
    CHECK(!no_deg_one_factor(p17, E));
    CHECK(!no_deg_one_factor(p2, Q));
}

TEST_CASE("check_nodegonefact") {
    auto Q = Qf();
    auto E = Cubic();
    auto G = mk_field({Int(-1), Int(-1), Int(1)}); // Q(sqrt5) via x^2-x-1, disc 5
    auto rep = check_nodegonefact(Q, E, G, Int(2));
    CHECK(rep.hypothesis_triggered);
    CHECK(rep.verdict);
    CHECK(rep.f_in_E == 3);
    REQUIRE(!rep.f_GE_over_G.empty());
    for (int f : rep.f_GE_over_G) CHECK(f == 3);
    auto rep17 = check_nodegonefact(Q, E, G, Int(17));
    CHECK(!rep17.hypothesis_triggered);
    CHECK(rep17.verdict);
    auto G2 = Qsqrt2();
    auto E2 = mk_field({Int(-3), Int(0), Int(1)});
    CHECK_THROWS_AS(check_nodegonefact(Q, E2, G2, Int(5)), nt_error);
}

TEST_CASE("strong approximation splitting") {
    auto Q = Qf();
    auto r = strong_approx_split(Q->from_rat(Rat(3, 4)), Q->from_rat(Rat(5, 9)));
    CHECK(r.a1.rat() == Rat(3));
    CHECK(r.b1.rat() == Rat(4));
    CHECK(r.a2.rat() == Rat(5));
    CHECK(r.b2.rat() == Rat(9));
    auto r2 = strong_approx_split(Q->from_rat(Rat(1, 2)), Q->from_rat(Rat(1, 3)));
    CHECK(r2.b1.rat() == Rat(2));
    CHECK(r2.b2.rat() == Rat(3));
    CHECK_THROWS_AS(strong_approx_split(Q->from_rat(Rat(1, 2)), Q->from_rat(Rat(1, 4))),
                    nt_error);
    // quadratic case
    auto K = Qsqrt2();
    auto z1 = fe_inv(fe_add(K->from_rat(Rat(3)), K->gen())); // 1/(3+sqrt2)
    auto z2 = K->from_rat(Rat(1, 3));
    auto s = strong_approx_split(z1, z2);
    divisor db1 = num_divisor(s.b1);
    divisor dz1 = den_divisor(z1);
    CHECK(db1.m == dz1.m);
    divisor db2 = num_divisor(s.b2);
    divisor dz2 = den_divisor(z2);
    CHECK(db2.m == dz2.m);
    CHECK(div_coprime(num_divisor(s.b1), num_divisor(s.b2)));
    CHECK(is_integral(s.a1));
    CHECK(is_integral(s.a2));
    CHECK(div_coprime(num_divisor(s.a1), dz1));
    CHECK(fe_eq(fe_div(s.a1, s.b1), z1));
    CHECK(fe_eq(fe_div(s.a2, s.b2), z2));
}

TEST_CASE("degree index") {
    CHECK(degree_index({1, 5, 25, 125}, Int(5)) == 3);
    CHECK(degree_index({1, 5, 25, 125}, Int(3)) == 0);
    CHECK(degree_index({1, 2, 4}, Int(2)) == 2);
}

TEST_CASE("density") {
    auto E = Cubic();
    auto r = density_count(E, 10000);
    Rat err = r.fraction - Rat(2, 3);
    if (err < 0) err = -err;
    CHECK(err < Rat(3, 100));
    auto K = Qsqrt2();
    auto r2 = density_count(K, 10000);
    Rat err2 = r2.fraction - Rat(1, 2);
    if (err2 < 0) err2 = -err2;
    CHECK(err2 < Rat(3, 100));
    auto r3 = density_count(K, 2);
    CHECK(r3.total_count == 0); // p=2 ramified, excluded
}

TEST_CASE("integrality predicate") {
    auto Q = Qf();
    auto p2 = prime_set::finite(Q, {factor_prime(Q, Int(2))[0]});
    auto p3 = prime_set::finite(Q, {factor_prime(Q, Int(3))[0]});
    CHECK(!integrality_predicate(Q->from_rat(Rat(1, 4)), p2));
    CHECK(integrality_predicate(Q->from_rat(Rat(1, 4)), p3));
    CHECK(integrality_predicate(Q->zero(), p2));
}
