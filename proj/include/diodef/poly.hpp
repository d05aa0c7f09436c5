#ifndef DIODEF_POLY_HPP
#define DIODEF_POLY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "diodef/intutil.hpp"

namespace diodef {

// Dense univariate polynomials, coefficients low to high.
// The zero polynomial is the empty vector; nonzero polynomials have a
// nonzero leading coefficient (use q_trim / z_trim after manual edits).
using QPoly = std::vector<Rat>;
using ZPoly = std::vector<Int>;

void q_trim(QPoly &f);
void z_trim(ZPoly &f);
inline int q_deg(const QPoly &f) { return int(f.size()) - 1; } // -1 for zero
inline int z_deg(const ZPoly &f) { return int(f.size()) - 1; }

QPoly q_of(const ZPoly &f);
// clears denominators; returns (g, c) with f = g/c, g in Z[x]
std::pair<ZPoly, Int> z_clear(const QPoly &f);

QPoly q_add(const QPoly &a, const QPoly &b);
QPoly q_sub(const QPoly &a, const QPoly &b);
QPoly q_mul(const QPoly &a, const QPoly &b);
QPoly q_scale(const QPoly &a, const Rat &c);
QPoly q_deriv(const QPoly &a);
// division with remainder, b != 0
std::pair<QPoly, QPoly> q_divrem(const QPoly &a, const QPoly &b);
QPoly q_mod(const QPoly &a, const QPoly &b);
QPoly q_gcd(QPoly a, QPoly b); // monic gcd
Rat q_eval(const QPoly &f, const Rat &x);
QPoly q_compose(const QPoly &f, const QPoly &g);
QPoly q_monic(const QPoly &f);

ZPoly z_mul(const ZPoly &a, const ZPoly &b);
ZPoly z_add(const ZPoly &a, const ZPoly &b);
ZPoly z_sub(const ZPoly &a, const ZPoly &b);
Int z_eval(const ZPoly &f, const Int &x);
Int z_content(const ZPoly &f);
ZPoly z_primitive(const ZPoly &f);
// exact division; returns nullopt if b does not divide a over Z
std::optional<ZPoly> z_divexact(const ZPoly &a, const ZPoly &b);

// resultant of integer polynomials (subresultant PRS)
Int z_resultant(const ZPoly &a, const ZPoly &b);
Rat q_resultant(const QPoly &a, const QPoly &b);
// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f)
Int z_disc(const ZPoly &f);

// ----- real root machinery (exact, Sturm) -----

// number of distinct real roots of squarefree f in (a, b]; a < b
int sturm_count(const ZPoly &f, const Rat &a, const Rat &b);
int sturm_count_all(const ZPoly &f);
// Cauchy-style bound: all complex roots have |z| < bound
Rat root_bound(const ZPoly &f);
// disjoint isolating intervals (lo, hi] for all real roots of squarefree f,
// sorted ascending; each contains exactly one root
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const ZPoly &f);
// shrink an isolating interval of f until hi - lo <= width
std::pair<Rat, Rat> refine_root(const ZPoly &f, Rat lo, Rat hi, const Rat &width);

// ----- factorisation over Z / irreducibility over Q -----

// monic integer input; returns a nontrivial monic factor if one exists
std::optional<ZPoly> find_monic_factor(const ZPoly &f);
bool is_irreducible_monic(const ZPoly &f);
// full factorisation of a monic integer polynomial into monic irreducibles
std::vector<ZPoly> factor_monic(const ZPoly &f);

} // namespace diodef

#endif
