#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include "diodef/poly.hpp"
#include "diodef/modpoly.hpp"

using namespace diodef;

TEST_CASE("resultant and discriminant") {
    ZPoly f = {Int(-2), Int(0), Int(1)}; // x^2 - 2
    CHECK(z_disc(f) == 8);
    ZPoly cubic = {Int(-1), Int(-3), Int(0), Int(1)}; // x^3 - 3x - 1
    CHECK(z_disc(cubic) == 81);
    ZPoly lin = {Int(-1), Int(1)};
    CHECK(z_disc(lin) == 1);
    // res(x^2-2, x^2-3) = (2-3)^2 = 1
    ZPoly g = {Int(-3), Int(0), Int(1)};
    CHECK(z_resultant(f, g) == 1);
}

TEST_CASE("sturm") {
    ZPoly f = {Int(-2), Int(0), Int(1)};
    CHECK(sturm_count_all(f) == 2);
    ZPoly c = {Int(7), Int(0), Int(1)}; // x^2+7
    CHECK(sturm_count_all(c) == 0);
    ZPoly cubic = {Int(-1), Int(-3), Int(0), Int(1)};
    CHECK(sturm_count_all(cubic) == 3);
    auto iv = isolate_real_roots(f);
    REQUIRE(iv.size() == 2);
    auto r = refine_root(f, iv[1].first, iv[1].second, make_rat(Int(1), Int(1000)));
    CHECK(r.first <= Rat(1415, 1000));
    CHECK(r.second >= Rat(1414, 1000));
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible_monic({Int(-2), Int(0), Int(1)}));
    CHECK(!is_irreducible_monic({Int(-4), Int(0), Int(1)}));
    CHECK(is_irreducible_monic({Int(-1), Int(-3), Int(0), Int(1)}));
    CHECK(is_irreducible_monic({Int(-2), Int(0), Int(0), Int(0), Int(1)})); // x^4-2
    // x^4 - 10x^2 + 1 = minpoly of sqrt2+sqrt3, irreducible
    CHECK(is_irreducible_monic({Int(1), Int(0), Int(-10), Int(0), Int(1)}));
    // (x^2-2)(x^2-3)
    ZPoly prod = z_mul({Int(-2), Int(0), Int(1)}, {Int(-3), Int(0), Int(1)});
    auto fac = factor_monic(prod);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0] == ZPoly{Int(-3), Int(0), Int(1)});
    CHECK(fac[1] == ZPoly{Int(-2), Int(0), Int(1)});
    // x^2 - 4 splits
    auto f2 = factor_monic({Int(-4), Int(0), Int(1)});
    REQUIRE(f2.size() == 2);
}

TEST_CASE("fp factorization") {
    // x^2-2 mod 7 = (x-3)(x-4)
    FpPoly f = fp_reduce({Int(-2), Int(0), Int(1)}, 7);
    auto fac = fp_factor_squarefree(f, 7);
    REQUIRE(fac.size() == 2);
    CHECK(fp_deg(fac[0]) == 1);
    CHECK(fp_deg(fac[1]) == 1);
    // x^2-2 mod 3 irreducible
    FpPoly g = fp_reduce({Int(-2), Int(0), Int(1)}, 3);
    CHECK(fp_irreducible(g, 3));
    // x^3-3x-1 mod 2 irreducible, mod 17 splits completely
    FpPoly c2 = fp_reduce({Int(-1), Int(-3), Int(0), Int(1)}, 2);
    CHECK(fp_irreducible(c2, 2));
    CHECK(!fp_has_root(c2, 2));
    FpPoly c17 = fp_reduce({Int(-1), Int(-3), Int(0), Int(1)}, 17);
    auto fac17 = fp_factor_squarefree(c17, 17);
    CHECK(fac17.size() == 3);
}

TEST_CASE("hensel lifting") {
    ZPoly f = {Int(-2), Int(0), Int(1)};
    auto fac = fp_factor_squarefree(fp_reduce(f, 7), 7);
    auto lifted = hensel_lift(f, fac, Int(7), 5);
    REQUIRE(lifted.size() == 2);
    pk_ctx c{Int(7), 5, Int(16807)};
    PkPoly prod = pk_mul(lifted[0], lifted[1], c);
    PkPoly base = pk_reduce(f, c);
    CHECK(prod == base);
    // each factor has a root that squares to 2 mod 7^5
    for (auto &g : lifted) {
        REQUIRE(g.size() == 2);
        Int root = (c.mod - g[0]) % c.mod;
        CHECK((root * root) % c.mod == Int(2));
    }
}
