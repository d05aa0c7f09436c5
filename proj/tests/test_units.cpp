#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include "diodef/units.hpp"
#include "diodef/errors.hpp"
#include "diodef/fixtures.hpp"
#include "oracles.hpp"

using namespace diodef;
namespace fx = diodef::fixtures;

TEST_CASE("pell fundamental solutions") {
    auto s2 = pell_solve_Q(Int(2));
    CHECK(s2.x == 3);
    CHECK(s2.y == 2);
    auto s3 = pell_solve_Q(Int(3));
    CHECK(s3.x == 2);
    CHECK(s3.y == 1);
    auto s5 = pell_solve_Q(Int(5));
    CHECK(s5.x == 9);
    CHECK(s5.y == 4);
    CHECK_THROWS_AS(pell_solve_Q(Int(4)), nt_error);
    // minimality against brute force for d <= 50
    for (long d = 2; d <= 50; ++d) {
        if (exact_sqrt(Int(d))) continue;
        auto s = pell_solve_Q(Int(d));
        auto b = oracle::pell_brute(d, 100000);
        REQUIRE(b);
        CHECK(s.x == b->first);
        CHECK(s.y == b->second);
        CHECK(s.x * s.x - Int(d) * s.y * s.y == 1);
    }
}

TEST_CASE("pell composition closure") {
    splitmix64 rng(3);
    for (int i = 0; i < 50; ++i) {
        long d = 2 + long(rng.below(40));
        if (exact_sqrt(Int(d))) continue;
        auto s = pell_solve_Q(Int(d));
        // (x1,y1) composed with (x2,y2): (x1 x2 + d y1 y2, x1 y2 + x2 y1)
        Int x1 = s.x, y1 = s.y;
        long e = 1 + long(rng.below(4));
        Int xa = s.x, ya = s.y;
        for (long j = 1; j < e; ++j) {
            Int xn = xa * s.x + Int(d) * ya * s.y;
            Int yn = xa * s.y + s.x * ya;
            xa = xn;
            ya = yn;
        }
        CHECK(xa * xa - Int(d) * ya * ya == 1);
        (void)x1;
        (void)y1;
    }
}

TEST_CASE("extend_by_sqrt") {
    auto K = fx::quad_sqrt2();
    auto d = fe_neg(K->gen()); // -sqrt2
    auto ext = extend_by_sqrt(K, d);
    CHECK(ext.L->degree == 4);
    CHECK(fe_eq(fe_mul(ext.delta, ext.delta), ext.d_img));
    // theta image satisfies x^2 - 2
    auto th = ext.K_in_L.gen_image;
    CHECK(fe_eq(fe_mul(th, th), ext.L->from_rat(Rat(2))));
    // rational d over a quadratic base goes through the compositum route
    auto ext3 = extend_by_sqrt(K, K->from_rat(Rat(3)));
    CHECK(ext3.L->degree == 4);
    CHECK(fe_eq(fe_mul(ext3.delta, ext3.delta), ext3.L->from_rat(Rat(3))));
    // a square d is rejected
    CHECK_THROWS_AS(extend_by_sqrt(K, K->from_rat(Rat(4))), nt_error);
    CHECK_THROWS_AS(extend_by_sqrt(K, K->from_rat(Rat(2))), nt_error); // 2 = sqrt2^2
    // split_by_delta round-trip
    auto v = fe_add(map_into(ext.K_in_L, fe_add(K->one(), K->gen())),
                    fe_mul(ext.delta, map_into(ext.K_in_L, K->from_rat(Rat(5)))));
    auto sp = split_by_delta(ext, v);
    REQUIRE(sp);
    CHECK(fe_eq(sp->first, fe_add(K->one(), K->gen())));
    CHECK(fe_eq(sp->second, K->from_rat(Rat(5))));
}

TEST_CASE("norm one unit search") {
    auto Q = fx::rationals();
    auto u = norm_one_unit_search(Q, Q->from_rat(Rat(2)), 8);
    REQUIRE(u);
    CHECK(u->x.rat() == Rat(3));
    CHECK(u->y.rat() == Rat(2));
    CHECK(!is_root_of_unity(u->eps));
    // K = Q(sqrt2), d = 3: rational Pell lift
    auto K = fx::quad_sqrt2();
    auto u3 = norm_one_unit_search(K, K->from_rat(Rat(3)), 4);
    REQUIRE(u3);
    CHECK(u3->x.rat() == Rat(2));
    CHECK(u3->y.rat() == Rat(1));
    // d = -1 over Q: only roots of unity
    auto um = norm_one_unit_search(Q, Q->from_rat(Rat(-1)), 6);
    CHECK(!um.has_value());
    // the section-7 fixture: K = Q(sqrt2), d = -sqrt2
    auto d = fe_neg(K->gen());
    auto uf = norm_one_unit_search(K, d, 3);
    REQUIRE(uf);
    CHECK(!is_root_of_unity(uf->eps));
    field_element chk = fe_sub(fe_mul(uf->x, uf->x), fe_mul(fe_mul(d, uf->y), uf->y));
    CHECK(fe_eq(chk, K->one()));
    // norm-one certificate: eps * sigma(eps) = 1 with sigma flipping delta
    auto sig = fe_add(map_into(uf->ext.K_in_L, uf->x),
                      fe_mul(uf->ext.delta, map_into(uf->ext.K_in_L, uf->y)));
    CHECK(fe_eq(fe_mul(uf->eps, sig), uf->ext.L->one()));
}

TEST_CASE("roots of unity") {
    auto Q = fx::rationals();
    auto K = fx::quad_sqrt2();
    CHECK(*is_root_of_unity(Q->from_rat(Rat(-1))) == 2);
    CHECK(*is_root_of_unity(Q->one()) == 1);
    // 3 - 2 sqrt2 is a fundamental unit power, not a root of unity
    auto eps = fe_sub(K->from_rat(Rat(3)), fe_scale(K->gen(), Rat(2)));
    CHECK(!is_root_of_unity(eps));
    // fundamental pell solutions are never roots of unity
    for (long d : {2L, 3L, 5L, 6L, 7L, 10L}) {
        auto s = pell_solve_Q(Int(d));
        auto ext = extend_by_sqrt(Q, Q->from_rat(Rat(d)));
        auto qu = make_quad_unit(ext, Q->from_rat(Rat(s.x)), Q->from_rat(Rat(s.y)));
        CHECK(!is_root_of_unity(qu.eps));
    }
    // i = 0 - delta*(-1) with delta^2 = -1 has order 4
    auto exti = extend_by_sqrt(Q, Q->from_rat(Rat(-1)));
    auto i_unit = make_quad_unit(exti, Q->zero(), Q->from_rat(Rat(-1)));
    CHECK(*is_root_of_unity(i_unit.eps) == 4);
}

TEST_CASE("rootofunity fourth power") {
    auto Q = fx::rationals();
    // d = -1: exhaustive small-height solutions of x^2 + y^2 = 1
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y) {
            if (x * x + y * y != 1) continue;
            CHECK(check_rootofunity_fourth(Q->from_rat(Rat(x)), Q->from_rat(Rat(y)),
                                           Q->from_rat(Rat(-1))));
        }
    // d = -3: solutions of x^2 + 3y^2 = 1 in integers
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y) {
            if (x * x + 3 * y * y != 1) continue;
            CHECK(check_rootofunity_fourth(Q->from_rat(Rat(x)), Q->from_rat(Rat(y)),
                                           Q->from_rat(Rat(-3))));
        }
    // hypothesis violation: 3 - 2 sqrt2 is not a root of unity
    CHECK_THROWS_AS(check_rootofunity_fourth(Q->from_rat(Rat(3)), Q->from_rat(Rat(2)),
                                             Q->from_rat(Rat(2))),
                    nt_error);
}

TEST_CASE("fourth power descent to a subfield") {
    auto Q = fx::rationals();
    auto s = pell_solve_Q(Int(2));
    auto ext = extend_by_sqrt(Q, Q->from_rat(Rat(2)));
    auto u = make_quad_unit(ext, Q->from_rat(Rat(s.x)), Q->from_rat(Rat(s.y)));
    subfield_map id{Q, Q, Q->gen()};
    CHECK(fourth_power_in_BM(u, id)); // base case M = K = Q
    // K = Q(sqrt2), M = Q, eps with irrational components: descent fails
    auto K = fx::quad_sqrt2();
    auto d = fe_neg(K->gen());
    auto uf = norm_one_unit_search(K, d, 3);
    REQUIRE(uf);
    subfield_map QinK{Q, K, K->from_rat(Rat(1))};
    CHECK(!fourth_power_in_BM(*uf, QinK));
    // and trivially passes into M = K itself
    subfield_map KinK{K, K, K->gen()};
    CHECK(fourth_power_in_BM(*uf, KinK));
}

TEST_CASE("closeto1 search") {
    auto Q = fx::rationals();
    auto K = fx::quad_sqrt2();
    // all-real ambient: vacuous, r = 1
    auto s = pell_solve_Q(Int(2));
    auto ext = extend_by_sqrt(Q, Q->from_rat(Rat(2)));
    auto u = make_quad_unit(ext, Q->from_rat(Rat(s.x)), Q->from_rat(Rat(s.y)));
    auto r0 = closeto1_find_r(u, 2, Rat(1, 2), 50);
    REQUIRE(r0);
    CHECK(*r0 == 1);
    // fixture unit over K(delta), delta^2 = -sqrt2: genuinely complex embeddings
    auto d = fe_neg(K->gen());
    auto uf = norm_one_unit_search(K, d, 3);
    REQUIRE(uf);
    CHECK(uf->ext.L->num_real < uf->ext.L->degree);
    auto r1 = closeto1_find_r(*uf, 1, Rat(1, 2), 50);
    REQUIRE(r1);
    CHECK(*r1 == 1); // k = 1 is identically satisfied
    auto r2 = closeto1_find_r(*uf, 2, Rat(1, 2), 200);
    REQUIRE(r2);
    // monotonicity of the midpoint error along the scanned prefix is part of
    // the acceptance suite; here just re-verify the verdict at the found r
    long r = *r2;
    field_element er = fe_pow(uf->eps, Int(r));
    field_element erk = fe_pow(uf->eps, Int(2 * r));
    field_element v = fe_sub(fe_div(fe_sub(erk, uf->ext.L->one()), fe_sub(er, uf->ext.L->one())),
                             uf->ext.L->from_rat(Rat(2)));
    for (const auto &e : uf->ext.L->embeddings()) {
        if (e.is_real) continue;
        QIv a2 = cb_abs2(embed_value(v, e.index, 256));
        CHECK(a2.hi < Rat(1, 4));
    }
}

TEST_CASE("unit congruence power") {
    auto Q = fx::rationals();
    auto K = fx::quad_sqrt2();
    // eps = 3 - 2 sqrt2 as a unit of Q(sqrt2)(delta), delta^2 = 2... use base Q, d = 2
    auto s = pell_solve_Q(Int(2));
    auto ext = extend_by_sqrt(Q, Q->from_rat(Rat(2)));
    auto u = make_quad_unit(ext, Q->from_rat(Rat(s.x)), Q->from_rat(Rat(s.y)));
    auto r = unit_congruence_power(u, Q->from_rat(Rat(2)), Int(100000));
    CHECK(r.t >= 1);
    CHECK(is_integral(fe_div(fe_sub(r.nu, ext.L->one()), ext.L->from_rat(Rat(2)))));
    // m = 1: t = 1
    auto r1 = unit_congruence_power(u, Q->one(), Int(10));
    CHECK(r1.t == 1);
    // eps = 1: t = 1 for any m (use x=1, y=0)
    auto one_unit = make_quad_unit(ext, Q->one(), Q->zero());
    auto r2 = unit_congruence_power(one_unit, Q->from_rat(Rat(7)), Int(10));
    CHECK(r2.t == 1);
    (void)K;
}
