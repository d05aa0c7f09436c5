#include "diodef/interval.hpp"
#include "diodef/errors.hpp"

#include <algorithm>

namespace diodef {

QIv iv_add(const QIv &a, const QIv &b) { return {a.lo + b.lo, a.hi + b.hi}; }
QIv iv_sub(const QIv &a, const QIv &b) { return {a.lo - b.hi, a.hi - b.lo}; }
QIv iv_neg(const QIv &a) { return {-a.hi, -a.lo}; }

QIv iv_mul(const QIv &a, const QIv &b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

QIv iv_div(const QIv &a, const QIv &b) {
    if (b.contains_zero()) fail(errc::division_by_zero, "interval division through zero");
    QIv inv{Rat(1) / b.hi, Rat(1) / b.lo};
    return iv_mul(a, inv);
}

QIv iv_abs(const QIv &a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return iv_neg(a);
    Rat nl = -a.lo;
    return {Rat(0), std::max(nl, a.hi)};
}

QIv iv_sqrt(const QIv &a, unsigned bits) {
    if (a.lo < 0) fail(errc::inconsistent, "sqrt of interval with negative part");
    return {sqrt_lower(a.lo, bits), sqrt_upper(a.hi, bits)};
}

CBox cb_add(const CBox &a, const CBox &b) { return {iv_add(a.re, b.re), iv_add(a.im, b.im)}; }
CBox cb_sub(const CBox &a, const CBox &b) { return {iv_sub(a.re, b.re), iv_sub(a.im, b.im)}; }
CBox cb_neg(const CBox &a) { return {iv_neg(a.re), iv_neg(a.im)}; }
CBox cb_conj(const CBox &a) { return {a.re, iv_neg(a.im)}; }

CBox cb_mul(const CBox &a, const CBox &b) {
    return {iv_sub(iv_mul(a.re, b.re), iv_mul(a.im, b.im)),
            iv_add(iv_mul(a.re, b.im), iv_mul(a.im, b.re))};
}

QIv cb_abs2(const CBox &a) {
    QIv r2 = iv_mul(a.re, a.re), i2 = iv_mul(a.im, a.im);
    QIv rr = iv_abs(a.re), ii = iv_abs(a.im);
    // tight: |z|^2 in [lo(|re|)^2 + lo(|im|)^2, hi(|re|)^2 + hi(|im|)^2]
    (void)r2;
    (void)i2;
    return {rr.lo * rr.lo + ii.lo * ii.lo, rr.hi * rr.hi + ii.hi * ii.hi};
}

QIv cb_abs(const CBox &a, unsigned bits) { return iv_sqrt(cb_abs2(a), bits); }

CBox cb_div(const CBox &a, const CBox &b) {
    QIv n2 = cb_abs2(b);
    if (n2.contains_zero()) fail(errc::division_by_zero, "box division through zero");
    CBox num = cb_mul(a, cb_conj(b));
    return {iv_div(num.re, n2), iv_div(num.im, n2)};
}

CBox cb_eval(const QPoly &f, const CBox &z) {
    CBox r{QIv(Rat(0)), QIv(Rat(0))};
    for (size_t i = f.size(); i-- > 0;) {
        r = cb_mul(r, z);
        r.re = iv_add(r.re, QIv(f[i]));
    }
    return r;
}

CBox cb_pow(const CBox &z, unsigned long e) {
    CBox r{QIv(Rat(1)), QIv(Rat(0))};
    CBox b = z;
    while (e) {
        if (e & 1) r = cb_mul(r, b);
        b = cb_mul(b, b);
        e >>= 1;
    }
    return r;
}

bool cb_disjoint(const CBox &a, const CBox &b) {
    bool re_over = a.re.lo <= b.re.hi && b.re.lo <= a.re.hi;
    bool im_over = a.im.lo <= b.im.hi && b.im.lo <= a.im.hi;
    return !(re_over && im_over);
}

} // namespace diodef
