#ifndef DIODEF_MODPOLY_HPP
#define DIODEF_MODPOLY_HPP

#include <cstdint>
#include <vector>

#include "diodef/intutil.hpp"
#include "diodef/poly.hpp"

namespace diodef {

// F_p[x] with p an odd-or-2 prime below 2^31; coefficients low to high,
// normalized (no leading zeros).
struct fp_ctx {
    uint64_t p;
};

using FpPoly = std::vector<uint64_t>;

FpPoly fp_reduce(const ZPoly &f, uint64_t p);
void fp_trim(FpPoly &f);
inline int fp_deg(const FpPoly &f) { return int(f.size()) - 1; }
FpPoly fp_add(const FpPoly &a, const FpPoly &b, uint64_t p);
FpPoly fp_sub(const FpPoly &a, const FpPoly &b, uint64_t p);
FpPoly fp_mul(const FpPoly &a, const FpPoly &b, uint64_t p);
FpPoly fp_mod(const FpPoly &a, const FpPoly &m, uint64_t p);
std::pair<FpPoly, FpPoly> fp_divrem(const FpPoly &a, const FpPoly &m, uint64_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p);
FpPoly fp_monic(const FpPoly &a, uint64_t p);
FpPoly fp_powmod(const FpPoly &base, const Int &e, const FpPoly &m, uint64_t p);
FpPoly fp_deriv(const FpPoly &a, uint64_t p);
uint64_t fp_eval(const FpPoly &f, uint64_t x, uint64_t p);
// extended euclid: g = gcd, g = s*a + t*b
void fp_xgcd(const FpPoly &a, const FpPoly &b, FpPoly &g, FpPoly &s, FpPoly &t, uint64_t p);

bool fp_squarefree(const FpPoly &f, uint64_t p);
// true iff f (squarefree) has a root in F_p
bool fp_has_root(const FpPoly &f, uint64_t p);
// monic irreducible factors of a squarefree monic polynomial, sorted by
// (degree, coefficient vector)
std::vector<FpPoly> fp_factor_squarefree(const FpPoly &f, uint64_t p);
// degrees of irreducible factors with multiplicity (any input)
std::vector<int> fp_factor_degrees(const FpPoly &f, uint64_t p);
bool fp_irreducible(const FpPoly &f, uint64_t p);

// ----- arithmetic mod p^k (coefficients as Int in [0, p^k)) -----

struct pk_ctx {
    Int p;
    int k;
    Int mod; // p^k
};

using PkPoly = std::vector<Int>;

PkPoly pk_reduce(const ZPoly &f, const pk_ctx &c);
void pk_trim(PkPoly &f);
PkPoly pk_mul(const PkPoly &a, const PkPoly &b, const pk_ctx &c);
PkPoly pk_sub(const PkPoly &a, const PkPoly &b, const pk_ctx &c);
PkPoly pk_add(const PkPoly &a, const PkPoly &b, const pk_ctx &c);
// remainder of a by monic m
PkPoly pk_mod_monic(const PkPoly &a, const PkPoly &m, const pk_ctx &c);

// Hensel: given monic f and its pairwise-coprime monic factorization mod p,
// lift to monic factors mod p^k (f == product mod p^k)
std::vector<PkPoly> hensel_lift(const ZPoly &f, const std::vector<FpPoly> &factors,
                                const Int &p, int k);

} // namespace diodef

#endif
