#ifndef DIODEF_NUMFIELD_HPP
#define DIODEF_NUMFIELD_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diodef/interval.hpp"
#include "diodef/intutil.hpp"
#include "diodef/matq.hpp"
#include "diodef/poly.hpp"

namespace diodef {

class number_field;
using FieldPtr = std::shared_ptr<const number_field>;

// discriminant-based embedding data is computed once at construction;
// queries refine from the stored enclosures without mutating the field
struct Embedding {
    int index = 0;
    CBox enclosure;
    bool is_real = false;
};

enum class sign_verdict { negative, zero, positive };
enum class cmp_verdict { lt, eq, gt };

// element of Q(theta) as a reduced polynomial in theta (degree < n)
struct field_element {
    FieldPtr K;
    QPoly c; // trimmed; empty means 0

    bool is_zero() const { return c.empty(); }
    bool is_rational() const { return c.size() <= 1; }
    Rat rat() const { return c.empty() ? Rat(0) : c[0]; } // valid when is_rational
};

class number_field : public std::enable_shared_from_this<number_field> {
  public:
    ZPoly min_poly; // monic irreducible over Q
    int degree = 0;
    Int disc;      // disc(min_poly)
    int num_real = 0;

    const std::vector<Embedding> &embeddings() const { return emb_; }
    // conjugate-pair partner of embedding i (i itself when real)
    int conj_index(int i) const { return conj_[i]; }
    // enclosure of root i with every box side below 2^-bits
    CBox root_box(int i, unsigned bits) const;

    field_element zero() const;
    field_element one() const;
    field_element from_rat(const Rat &q) const;
    field_element from_coords(const QPoly &coords) const; // reduced mod min_poly
    field_element gen() const;                            // theta

    std::string describe() const;

    static FieldPtr make(const ZPoly &min_poly); // mk_field

  private:
    friend FieldPtr mk_field(const ZPoly &);
    number_field() = default;
    void build_embeddings(unsigned bits);
    std::vector<Embedding> emb_;
    std::vector<int> conj_;
    std::vector<Rat> power_sums_; // s_0..s_{n-1} of the roots
    friend field_element trace_mul_cache(const field_element &);
    friend Rat trace(const field_element &);
};

FieldPtr mk_field(const ZPoly &coeffs);

// arithmetic (exact, reduced mod min_poly)
field_element fe_add(const field_element &a, const field_element &b);
field_element fe_sub(const field_element &a, const field_element &b);
field_element fe_mul(const field_element &a, const field_element &b);
field_element fe_neg(const field_element &a);
field_element fe_inv(const field_element &a);
field_element fe_div(const field_element &a, const field_element &b);
field_element fe_pow(const field_element &a, const Int &e);
bool fe_eq(const field_element &a, const field_element &b);
field_element fe_scale(const field_element &a, const Rat &q);

Rat norm(const field_element &x);
Rat trace(const field_element &x);
QPoly min_poly_of(const field_element &x); // monic over Q

// interval image of x under embedding i, refined so both box sides
// are below 2^-bits
CBox embed_value(const field_element &x, int emb_index, unsigned bits);

sign_verdict sign_at(const field_element &x, const Embedding &e, unsigned start_bits = 64);
cmp_verdict abs_compare(const field_element &x, const field_element &y, const Embedding &e,
                        unsigned start_bits = 64);

bool is_totally_real_field(const FieldPtr &F);
bool is_totally_positive(const field_element &x);

// all coordinates integral (element of Z[theta])
bool in_ztheta(const field_element &x);
// algebraic integer test: monic minimal polynomial has integer coefficients
bool is_integral(const field_element &x);
// x = u / c with u in Z[theta], c a positive integer
std::pair<std::vector<Int>, Int> ztheta_split(const field_element &x);

struct subfield_map {
    FieldPtr sub, sup;
    field_element gen_image; // image of sub's generator inside sup
};

field_element map_into(const subfield_map &m, const field_element &x_sub);
// coordinates of x in the subfield, if x lies in the image
std::optional<field_element> subfield_coords(const subfield_map &m, const field_element &x);

struct compositum_result {
    FieldPtr field;
    subfield_map f1_map, f2_map;
    int k = 0; // generator is theta1 + k*theta2
};

compositum_result compositum(const FieldPtr &F1, const FieldPtr &F2, int degree_budget = 16);

// roots of a rational polynomial that lie in F (with multiplicity dropped)
std::vector<field_element> roots_in_field(const QPoly &f, const FieldPtr &F);

} // namespace diodef

#endif
