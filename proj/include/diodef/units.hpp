#ifndef DIODEF_UNITS_HPP
#define DIODEF_UNITS_HPP

#include <optional>
#include <utility>

#include "diodef/numfield.hpp"

namespace diodef {

struct pell_solution {
    Int x, y, d;
};

// fundamental solution of x^2 - d y^2 = 1 (minimal y > 0), continued fractions
pell_solution pell_solve_Q(const Int &d);

// K(delta) with delta^2 = d, realized as an absolute field
struct sqrt_ext {
    FieldPtr L;
    subfield_map K_in_L;
    field_element delta;
    field_element d_img;
};

// d integral and not a square in K; throws HypothesisViolated on a square
sqrt_ext extend_by_sqrt(const FieldPtr &K, const field_element &d);

// v = c0 + delta*c1 with c0, c1 in the base field, when v lies in K + delta*K
std::optional<std::pair<field_element, field_element>> split_by_delta(const sqrt_ext &ext,
                                                                      const field_element &v);

// norm-one unit eps = x - delta*y of the quadratic extension K(delta)
struct quad_unit {
    sqrt_ext ext;
    field_element x, y; // components in K
    field_element eps;  // element of ext.L
};

quad_unit make_quad_unit(const sqrt_ext &ext, const field_element &x, const field_element &y);

// bounded search for a norm-one unit of infinite order; absent on exhaustion
std::optional<quad_unit> norm_one_unit_search(const FieldPtr &K, const field_element &d,
                                              long height_budget);

// multiplicative order if x is a root of unity; absence is certified by the
// cyclotomic degree bound phi(k) <= [field : Q]
std::optional<long> is_root_of_unity(const field_element &x);

// given x^2 - d y^2 = 1 with xi = x - delta*y a root of unity, verify xi^4 = 1
bool check_rootofunity_fourth(const field_element &x, const field_element &y,
                              const field_element &d);

// eps^4 has both delta-components inside the designated subfield M of K
bool fourth_power_in_BM(const quad_unit &eps, const subfield_map &M_in_K);

// smallest r <= budget with |tau(eps^{rk}-1)/tau(eps^r-1) - k| < lambda at
// every non-real embedding tau of the ambient field
std::optional<long> closeto1_find_r(const quad_unit &eps, long k, const Rat &lambda,
                                    long r_budget);

struct congruence_power {
    Int t;             // multiplicative order of eps mod (m)
    field_element nu;  // eps^t, satisfies nu - 1 = 0 mod m
};

congruence_power unit_congruence_power(const quad_unit &eps, const field_element &m,
                                       const Int &order_budget);

} // namespace diodef

#endif
