#include "diodef/fixtures.hpp"

namespace diodef::fixtures {

FieldPtr rationals() {
    static FieldPtr F = mk_field({Int(-1), Int(1)});
    return F;
}

FieldPtr quad_sqrt2() {
    static FieldPtr F = mk_field({Int(-2), Int(0), Int(1)});
    return F;
}

FieldPtr quad_golden() {
    static FieldPtr F = mk_field({Int(-1), Int(-1), Int(1)});
    return F;
}

FieldPtr quad41() {
    static FieldPtr F = mk_field({Int(-10), Int(-1), Int(1)});
    return F;
}

FieldPtr cyclic_cubic() {
    static FieldPtr F = mk_field({Int(-1), Int(-3), Int(0), Int(1)});
    return F;
}

namespace {

CurvePtr make37a(const FieldPtr &K) {
    auto z = K->zero(), o = K->one();
    return elliptic_curve::make(K, z, z, o, K->from_rat(Rat(-1)), z);
}

} // namespace

CurvePtr curve37a() {
    static CurvePtr E = make37a(rationals());
    return E;
}

curve_point curve37a_gen() {
    auto E = curve37a();
    return ec_point(E, E->K->zero(), E->K->zero());
}

CurvePtr curve37a_quad() {
    static CurvePtr E = make37a(quad41());
    return E;
}

curve_point curve37a_quad_gen() {
    auto E = curve37a_quad();
    return ec_point(E, E->K->zero(), E->K->zero());
}

std::vector<int> z5_tower_degrees() { return {1, 5, 25, 125}; }

} // namespace diodef::fixtures
