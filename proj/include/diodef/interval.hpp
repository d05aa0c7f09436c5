#ifndef DIODEF_INTERVAL_HPP
#define DIODEF_INTERVAL_HPP

#include <optional>

#include "diodef/intutil.hpp"
#include "diodef/poly.hpp"

namespace diodef {

// closed interval with exact rational endpoints
struct QIv {
    Rat lo, hi;

    QIv() : lo(0), hi(0) {}
    QIv(const Rat &a) : lo(a), hi(a) {}
    QIv(const Rat &a, const Rat &b) : lo(a), hi(b) {}

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat &v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool positive() const { return lo > 0; }
    bool negative() const { return hi < 0; }
};

QIv iv_add(const QIv &a, const QIv &b);
QIv iv_sub(const QIv &a, const QIv &b);
QIv iv_mul(const QIv &a, const QIv &b);
QIv iv_neg(const QIv &a);
QIv iv_div(const QIv &a, const QIv &b); // b must exclude zero
QIv iv_abs(const QIv &a);
// enclosure of sqrt over non-negative interval
QIv iv_sqrt(const QIv &a, unsigned bits = 64);

// rectangular complex interval
struct CBox {
    QIv re, im;

    CBox() = default;
    CBox(const QIv &r, const QIv &i) : re(r), im(i) {}
    explicit CBox(const Rat &r) : re(r), im(Rat(0)) {}

    bool is_real_line() const { return im.lo == 0 && im.hi == 0; }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

CBox cb_add(const CBox &a, const CBox &b);
CBox cb_sub(const CBox &a, const CBox &b);
CBox cb_mul(const CBox &a, const CBox &b);
CBox cb_neg(const CBox &a);
CBox cb_conj(const CBox &a);
CBox cb_div(const CBox &a, const CBox &b); // b must exclude zero
// enclosure of |z|
QIv cb_abs(const CBox &a, unsigned bits = 64);
// enclosure of |z|^2, exact endpoints
QIv cb_abs2(const CBox &a);
// evaluate a rational polynomial over a box
CBox cb_eval(const QPoly &f, const CBox &z);
CBox cb_pow(const CBox &z, unsigned long e);
bool cb_disjoint(const CBox &a, const CBox &b);

} // namespace diodef

#endif
