#ifndef DIODEF_DIOPH_HPP
#define DIODEF_DIOPH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diodef/divisors.hpp"
#include "diodef/elliptic.hpp"
#include "diodef/units.hpp"

namespace diodef {

// ----- verification reports -----

struct eq_check {
    std::string id;
    bool pass = false;
    std::string note;
};

struct verification_report {
    std::vector<eq_check> checks;
    bool pass = true;

    void add(const std::string &id, bool ok, const std::string &note = "") {
        checks.push_back({id, ok, note});
        pass = pass && ok;
    }
    const eq_check *find(const std::string &id) const {
        for (const auto &c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }
};

// ----- section 3 bound machinery -----

bool lemma_numerators_check(const field_element &x, const field_element &z, const PrimeSetPtr &W);
bool lemma_denominators_check(const field_element &x1, const field_element &x2,
                              const PrimeSetPtr &W);
// n(x) rebased as a divisor of the subfield U; nullopt when the per-prime
// equalities or conjugate-completeness fail
std::optional<divisor> lemma_modify_check(const field_element &x, const field_element &t,
                                          const divisor &A);

// pure integer evaluator of the inequality chain used by the certificate;
// exposed for the synthetic-tuple cross-check
struct chain_input {
    Int X, Y, Z, W, A, B, p;
    int n; // [T:Q]
    bool distinct_conjugate;
};

struct chain_verdict {
    bool premise_y_le_x_le_z = false; // Y <= X <= Z
    bool premise_pz4_div_a = false;   // p^n Z^4 <= A (from divisibility)
    bool premise_a_bound = false;     // A <= 2^n B Z / W
    bool premise_b_bound = false;     // B <= Y^2
    bool contradiction = false;       // p^n Z^4 <= 2^n Z^3 is false
    bool consistent = false;          // premises jointly force x = conj(x)
    std::string failing;
};

chain_verdict usebounds_chain_eval(const chain_input &in);

verification_report usebounds_certificate(const field_element &x, const field_element &z,
                                          const field_element &t, const Int &p,
                                          const PrimeSetPtr &W, int modulus_exponent = 4);

// ----- witness bundles -----

enum class witness_mode { paper_exact, relaxed };

struct witness_bundle {
    std::string system_id; // setA | part2 | setA_bigring | part2_bigring | deg2
    witness_mode mode = witness_mode::paper_exact;
    int relax_exp = 4; // exponent substituted for the paper's x^4 / z^8 shapes
    int index_i = 1;   // subgroup index; points enter as [i]-multiples
    PrimeSetPtr ring;  // allowed denominator primes
    CurvePtr curve;
    std::map<std::string, field_element> vars;
    std::map<std::string, curve_point> points;
    std::vector<witness_bundle> sub; // nested set-A memberships for part2
};

witness_bundle setA_construct(long m, const curve_point &P, const PrimeSetPtr &ring,
                              witness_mode mode, int relax_exp, long budget);
verification_report setA_verify(const field_element &x, const witness_bundle &b);

struct part2_fixture {
    curve_point P;
    Int p;           // odd prime with no factor in the ring set
    PrimeSetPtr ring;
};

witness_bundle part2_construct(long x, const part2_fixture &fx, witness_mode mode, int relax_exp,
                               long budget);
verification_report part2_verify(long x, const witness_bundle &b, const part2_fixture &fx);

field_element square_trick_recover(const field_element &s0, const field_element &s1,
                                   const field_element &s2);

// ----- section 6 big-ring variants -----

struct bigring_params {
    FieldPtr E;
    ZPoly R;             // minimal polynomial of the integral-unit generator
    Int A1;              // A(1)
    std::vector<Int> Nj; // offsets N_0..N_{2 n_E}
    Int p;
};

bigring_params bigring_params_make(const FieldPtr &E, const std::vector<Int> &Nj, const Int &p);

witness_bundle bigring_setA_construct(long x, const curve_point &P, const bigring_params &params,
                                      const PrimeSetPtr &W, int relax_exp, long budget);
verification_report bigring_setA_verify(const field_element &x, const witness_bundle &b,
                                        const bigring_params &params, const PrimeSetPtr &W);
verification_report bigring_part2_verify(long x, const witness_bundle &b,
                                         const bigring_params &params, const PrimeSetPtr &W);

// ----- section 7 degree-2 system -----

struct deg2_fixture {
    FieldPtr K;
    field_element a_G; // G = K(sqrt(a_G)), not totally real
    field_element d_H; // H = K(sqrt(d_H)); sign-linked to a_G
};

verification_report deg2_fixture_check(const deg2_fixture &fx);
witness_bundle deg2_construct(long x, const deg2_fixture &fx, long unit_budget,
                              const Int &order_budget, long r_budget);
verification_report deg2_verify(const witness_bundle &b, const deg2_fixture &fx);

bool lemma_bound1_check(const Rat &norm_2alpha_y1, const Rat &Z);
bool lemma_bound2_check(const Rat &norm_y1, const Rat &norm_x, const Rat &norm_z);

// ----- section 8 model -----

bool b_member(const Int &i); // i in {2^n + n^2 : n >= 1}

std::vector<Int> ell_sequence_gen(const Int &M, const Int &p, const Int &q, int count,
                                  long sieve_budget = 4000000);

struct model_report {
    Int M;
    int c_p = 0, c_q = 0; // base valuations ord(x_{M+1} - x_1)
    verification_report rep;
};

model_report model_predicates(const curve_point &P, const Int &p, const Int &q,
                              const std::vector<Int> &ells);

} // namespace diodef

#endif
