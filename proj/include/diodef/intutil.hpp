#ifndef DIODEF_INTUTIL_HPP
#define DIODEF_INTUTIL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace diodef {

using Int = mpz_class;
using Rat = mpq_class;

// canonical rational from a possibly non-reduced pair
Rat make_rat(const Int &num, const Int &den);

inline Int num(const Rat &q) { return Int(q.get_num()); }
inline Int den(const Rat &q) { return Int(q.get_den()); }

inline bool is_int(const Rat &q) { return q.get_den() == 1; }

Int floor_div(const Int &a, const Int &b);
Int ceil_div(const Int &a, const Int &b);
Int floor_rat(const Rat &q);
Int ceil_rat(const Rat &q);

// floor/ceil of sqrt on non-negative integers
Int isqrt_floor(const Int &n);
Int isqrt_ceil(const Int &n);
std::optional<Int> exact_sqrt(const Int &n);

// rational u with u >= sqrt(q) and u - sqrt(q) <= 2^-bits (q >= 0)
Rat sqrt_upper(const Rat &q, unsigned bits = 64);
Rat sqrt_lower(const Rat &q, unsigned bits = 64);

// ord_p(n), n != 0
int podic_val(const Int &n, const Int &p);
// ord_p of a rational (negative when p divides the denominator); q != 0
int podic_val(const Rat &q, const Int &p);

bool is_probable_prime(const Int &n);
Int next_prime_above(const Int &n);

// all primes <= limit
std::vector<uint32_t> primes_up_to(uint32_t limit);

// full factorization, trial division + Pollard rho; throws on internal failure
std::map<Int, int> factorize(const Int &n_in);

// deterministic 64-bit mixer for reproducible pseudo-random streams
class splitmix64 {
  public:
    explicit splitmix64(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound)
    uint64_t below(uint64_t bound) { return next() % bound; }
    // small signed rational with numerator/denominator below b
    Rat small_rat(unsigned b) {
        long n = long(below(2 * b + 1)) - long(b);
        long d = long(below(b)) + 1;
        return make_rat(Int(n), Int(d));
    }

  private:
    uint64_t state_;
};

std::string rat_str(const Rat &q);
Rat parse_rat(const std::string &s); // accepts "a", "a/b"

} // namespace diodef

#endif
