#ifndef DIODEF_ELLIPTIC_HPP
#define DIODEF_ELLIPTIC_HPP

#include <memory>
#include <optional>
#include <vector>

#include "diodef/divisors.hpp"
#include "diodef/numfield.hpp"

namespace diodef {

class elliptic_curve;
using CurvePtr = std::shared_ptr<const elliptic_curve>;

// long Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// with integral coefficients over a number field
class elliptic_curve : public std::enable_shared_from_this<elliptic_curve> {
  public:
    FieldPtr K;
    field_element a1, a2, a3, a4, a6;
    field_element b2, b4, b6, b8;
    field_element disc;

    static CurvePtr make(const FieldPtr &K, const field_element &a1, const field_element &a2,
                         const field_element &a3, const field_element &a4,
                         const field_element &a6);

  private:
    elliptic_curve() = default;
};

struct curve_point {
    CurvePtr E;
    bool inf = true;
    field_element x, y;

    bool is_identity() const { return inf; }
};

curve_point ec_identity(const CurvePtr &E);
// checked constructor
curve_point ec_point(const CurvePtr &E, const field_element &x, const field_element &y);
bool on_curve(const curve_point &P);

curve_point ec_neg(const curve_point &P);
curve_point ec_add(const curve_point &P, const curve_point &Q);
curve_point ec_mul(const Int &n, const curve_point &P);
bool ec_eq(const curve_point &P, const curve_point &Q);

divisor x_den_divisor(const curve_point &Q);
bool check_evenorder(const curve_point &Q);
bool check_po3(const curve_point &Q, const Int &k);
bool check_ratio(const curve_point &Q, const Int &k);
bool check_po2(const curve_point &P, const Int &r, const Int &l, const Int &m);

struct multiple_result {
    long l;
    curve_point point;
};
// smallest l >= 1 with I | d(x([l]P)), or absent if it exceeds the budget
std::optional<multiple_result> find_multiple_with_denominator(const curve_point &P,
                                                              const divisor &I, long budget);

// ----- reduction and p-adic machinery (curves over Q) -----

long reduce_count_points(const CurvePtr &E, const Int &p);
long torsion_bound(const CurvePtr &E, const std::vector<Int> &primes);
// order of the reduction of P in E(F_p)
long reduction_order(const curve_point &P, const Int &p);

struct padic_x_result {
    // valuation of the result; nullopt = vanishes to working precision
    std::optional<int> ord;
    Int unit;     // unit part mod p^(digits - |ord|), zero if ord is nullopt
    int digits;   // working precision actually used
};

// x([n]P) as a p-adic number, via division-polynomial blocks mod p^K
padic_x_result padic_multiple_x(const curve_point &P, const Int &n, const Int &p, int start_digits = 8);
// x([n]P) - x(P) as a p-adic number
padic_x_result padic_xn_minus_x1(const curve_point &P, const Int &n, const Int &p,
                                 int start_digits = 8);

struct xdifference_report {
    Int M;
    long count_p = 0, count_q = 0;
    // per prime t in {p, q}: lhs = ord_t(x_{mM+1}-x_1), rhs = ord_t(x_{M+1}-x_1) + ord_t(m)
    int lhs_p = 0, rhs_p = 0, lhs_q = 0, rhs_q = 0;
    bool holds_p = false, holds_q = false;
    bool holds() const { return holds_p && holds_q; }
};

xdifference_report xdifference_check(const curve_point &P, const Int &p, const Int &q,
                                     const Int &m);

} // namespace diodef

#endif
