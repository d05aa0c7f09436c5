#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include "diodef/numfield.hpp"
#include "diodef/errors.hpp"

using namespace diodef;

static FieldPtr Qf() { return mk_field({Int(-1), Int(1)}); }
static FieldPtr Qsqrt2() { return mk_field({Int(-2), Int(0), Int(1)}); }

TEST_CASE("mk_field basics") {
    auto K = Qsqrt2();
    CHECK(K->degree == 2);
    CHECK(K->disc == 8);
    CHECK(K->num_real == 2);
    auto Q = Qf();
    CHECK(Q->degree == 1);
    CHECK(Q->disc == 1);
    CHECK_THROWS_AS(mk_field({Int(-4), Int(0), Int(1)}), nt_error);
    CHECK_THROWS_AS(mk_field({Int(-4), Int(0), Int(2)}), nt_error);
    auto C = mk_field({Int(7), Int(0), Int(1)}); // x^2+7
    CHECK(C->num_real == 0);
    CHECK(C->degree == 2);
}

TEST_CASE("arith in Q(sqrt2)") {
    auto K = Qsqrt2();
    auto s = K->gen();
    auto one = K->one();
    auto a = fe_add(one, s);           // 1+sqrt2
    auto b = fe_sub(one, s);           // 1-sqrt2
    CHECK(fe_eq(fe_mul(a, b), K->from_rat(Rat(-1))));
    auto inv = fe_inv(a);              // -1+sqrt2
    CHECK(fe_eq(inv, fe_add(K->from_rat(Rat(-1)), s)));
    CHECK(fe_eq(fe_mul(a, inv), one));
    CHECK(fe_eq(fe_add(a, K->zero()), a));
    CHECK_THROWS_AS(fe_inv(K->zero()), nt_error);
}

TEST_CASE("norm trace minpoly") {
    auto K = Qsqrt2();
    auto s = K->gen();
    auto a = fe_add(K->one(), s);
    CHECK(norm(a) == Rat(-1));
    auto t = fe_add(K->from_rat(Rat(3)), s);
    CHECK(norm(t) == Rat(7));
    CHECK(trace(s) == Rat(0));
    CHECK(trace(t) == Rat(6));
    auto mp = min_poly_of(s);
    CHECK(mp == QPoly{Rat(-2), Rat(0), Rat(1)});
    auto mp3 = min_poly_of(K->from_rat(Rat(3)));
    CHECK(mp3 == QPoly{Rat(-3), Rat(1)});
    auto mpa = min_poly_of(a); // x^2-2x-1
    CHECK(mpa == QPoly{Rat(-1), Rat(-2), Rat(1)});
    // multiplicativity on random pairs
    splitmix64 rng(99);
    for (int i = 0; i < 200; ++i) {
        field_element x{K, {rng.small_rat(8), rng.small_rat(8)}};
        field_element y{K, {rng.small_rat(8), rng.small_rat(8)}};
        q_trim(x.c); q_trim(y.c);
        CHECK(norm(fe_mul(x, y)) == norm(x) * norm(y));
        CHECK(trace(fe_add(x, y)) == trace(x) + trace(y));
    }
}

TEST_CASE("signs and comparisons") {
    auto K = Qsqrt2();
    auto s = K->gen();
    auto embs = K->embeddings();
    REQUIRE(embs.size() == 2);
    // embeddings sorted ascending: emb0 ~ -1.414, emb1 ~ +1.414
    CHECK(sign_at(s, embs[0]) == sign_verdict::negative);
    CHECK(sign_at(s, embs[1]) == sign_verdict::positive);
    CHECK(sign_at(K->zero(), embs[0]) == sign_verdict::zero);
    CHECK(abs_compare(K->one(), K->from_rat(Rat(3)), embs[0]) == cmp_verdict::lt);
    CHECK(abs_compare(s, fe_neg(s), embs[0]) == cmp_verdict::eq);
    CHECK(abs_compare(s, fe_neg(s), embs[1]) == cmp_verdict::eq);
    auto a = fe_add(K->one(), s); // |1+sqrt2| vs |2| at positive emb: gt
    CHECK(abs_compare(a, K->from_rat(Rat(2)), embs[1]) == cmp_verdict::gt);
    // stability under refinement
    CHECK(sign_at(s, embs[1], 128) == sign_verdict::positive);
    CHECK(abs_compare(a, K->from_rat(Rat(2)), embs[1], 128) == cmp_verdict::gt);
}

TEST_CASE("totally real / positive") {
    auto K = Qsqrt2();
    CHECK(is_totally_real_field(K));
    auto C = mk_field({Int(7), Int(0), Int(1)});
    CHECK(!is_totally_real_field(C));
    auto t = fe_add(K->from_rat(Rat(3)), K->gen()); // 3+sqrt2 totally positive
    CHECK(is_totally_positive(t));
    CHECK(!is_totally_positive(K->gen()));
}

TEST_CASE("integrality") {
    auto K = Qsqrt2();
    CHECK(is_integral(K->gen()));
    CHECK(is_integral(fe_add(K->one(), K->gen())));
    CHECK(!is_integral(K->from_rat(Rat(1, 2))));
    field_element half_s{K, {Rat(0), Rat(1, 2)}};
    CHECK(!is_integral(half_s));
}

TEST_CASE("compositum") {
    auto Q = Qf();
    auto K = Qsqrt2();
    auto c1 = compositum(Q, K);
    CHECK(c1.field->degree == 2);
    auto c2 = compositum(K, K);
    CHECK(c2.field->degree == 2);
    auto F3 = mk_field({Int(-3), Int(0), Int(1)});
    auto c3 = compositum(K, F3);
    CHECK(c3.field->degree == 4);
    // image of sqrt2 squares to 2, image of sqrt3 squares to 3
    auto i2 = c3.f1_map.gen_image;
    CHECK(fe_eq(fe_mul(i2, i2), c3.field->from_rat(Rat(2))));
    auto i3 = c3.f2_map.gen_image;
    CHECK(fe_eq(fe_mul(i3, i3), c3.field->from_rat(Rat(3))));
    // subfield coordinates
    auto back = subfield_coords(c3.f1_map, i2);
    REQUIRE(back);
    CHECK(fe_eq(*back, K->gen()));
    auto none = subfield_coords(c3.f1_map, i3);
    CHECK(!none);
    auto five = subfield_coords(c3.f1_map, c3.field->from_rat(Rat(5)));
    REQUIRE(five);
    CHECK(fe_eq(*five, K->from_rat(Rat(5))));
    // embedding consistency: norm of mapped element multiplies by degree ratio
    auto x = fe_add(K->from_rat(Rat(3)), K->gen());
    auto xm = map_into(c3.f1_map, x);
    CHECK(norm(xm) == norm(x) * norm(x)); // [L:K]=2
}

TEST_CASE("complex field enclosures") {
    auto C = mk_field({Int(1), Int(0), Int(0), Int(0), Int(1)}); // x^4+1
    CHECK(C->num_real == 0);
    CHECK(C->degree == 4);
    auto embs = C->embeddings();
    for (auto &e : embs) CHECK(!e.is_real);
    // product of all embedding boxes of theta contains norm(theta) = 1
    CBox prod{QIv(Rat(1)), QIv(Rat(0))};
    for (int i = 0; i < 4; ++i) prod = cb_mul(prod, embed_value(C->gen(), i, 96));
    CHECK(prod.re.contains(Rat(1)));
    CHECK(prod.im.contains(Rat(0)));
}

TEST_CASE("minpoly roundtrip evaluates to zero") {
    auto K = mk_field({Int(-1), Int(-3), Int(0), Int(1)});
    splitmix64 rng(7);
    for (int i = 0; i < 20; ++i) {
        field_element x{K, {rng.small_rat(5), rng.small_rat(5), rng.small_rat(5)}};
        q_trim(x.c);
        auto mp = min_poly_of(x);
        field_element acc = K->zero();
        for (size_t j = mp.size(); j-- > 0;) {
            acc = fe_mul(acc, x);
            acc = fe_add(acc, K->from_rat(mp[j]));
        }
        CHECK(acc.is_zero());
    }
}
