#ifndef DIODEF_FIXTURES_HPP
#define DIODEF_FIXTURES_HPP

#include "diodef/elliptic.hpp"
#include "diodef/numfield.hpp"

namespace diodef::fixtures {

// Q presented as Q[x]/(x - 1)
FieldPtr rationals();
// Q(sqrt2) via x^2 - 2
FieldPtr quad_sqrt2();
// Q(sqrt5) via x^2 - x - 1 (disc 5)
FieldPtr quad_golden();
// real quadratic field x^2 - x - 10 (disc 41); the reduction order of the
// default curve point modulo 41 is 51, so multiples up to [30]P keep the
// lone bad prime out of every denominator
FieldPtr quad41();
// cyclic cubic x^3 - 3x - 1 (disc 81)
FieldPtr cyclic_cubic();

// y^2 + y = x^3 - x over Q with generator P = (0, 0)
CurvePtr curve37a();
curve_point curve37a_gen();

// the same equation over quad41 with the same rational generator
CurvePtr curve37a_quad();
curve_point curve37a_quad_gen();

// truncated degree list of the Z_5 cyclotomic tower
std::vector<int> z5_tower_degrees();

} // namespace diodef::fixtures

#endif
