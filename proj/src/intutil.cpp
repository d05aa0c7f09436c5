#include "diodef/intutil.hpp"
#include "diodef/errors.hpp"

#include <stdexcept>

namespace diodef {

const char *errc_name(errc c) {
    switch (c) {
    case errc::not_monic: return "NotMonic";
    case errc::reducible: return "Reducible";
    case errc::zero_degree: return "ZeroDegree";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::non_real_embedding: return "NonRealEmbedding";
    case errc::degree_budget_exceeded: return "DegreeBudgetExceeded";
    case errc::ramified_or_index_divisor: return "RamifiedOrIndexDivisor";
    case errc::support_hits_bad_prime: return "SupportHitsBadPrime";
    case errc::non_integral: return "NonIntegral";
    case errc::denominators_not_coprime: return "DenominatorsNotCoprime";
    case errc::point_not_on_curve: return "PointNotOnCurve";
    case errc::identity_point: return "IdentityPoint";
    case errc::bad_reduction: return "BadReduction";
    case errc::zero_x_coordinate: return "ZeroXCoordinate";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::perfect_square: return "PerfectSquare";
    case errc::subfield_data_missing: return "SubfieldDataMissing";
    case errc::order_budget_exceeded: return "OrderBudgetExceeded";
    case errc::budget_exhausted: return "BudgetExhausted";
    case errc::bezout_failure: return "BezoutFailure";
    case errc::dependent_family: return "DependentFamily";
    case errc::non_unit_generator: return "NonUnitGenerator";
    case errc::sieve_budget_exhausted: return "SieveBudgetExhausted";
    case errc::inconsistent: return "Inconsistent";
    case errc::config_error: return "ConfigError";
    }
    return "UnknownError";
}

Rat make_rat(const Int &num, const Int &den) {
    if (den == 0) fail(errc::division_by_zero, "rational with zero denominator");
    Rat q;
    mpq_set_num(q.get_mpq_t(), num.get_mpz_t());
    mpq_set_den(q.get_mpq_t(), den.get_mpz_t());
    q.canonicalize();
    return q;
}

Int floor_div(const Int &a, const Int &b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int ceil_div(const Int &a, const Int &b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_rat(const Rat &q) { return floor_div(num(q), den(q)); }
Int ceil_rat(const Rat &q) { return ceil_div(num(q), den(q)); }

Int isqrt_floor(const Int &n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Int isqrt_ceil(const Int &n) {
    Int r = isqrt_floor(n);
    if (r * r < n) r += 1;
    return r;
}

std::optional<Int> exact_sqrt(const Int &n) {
    if (n < 0) return std::nullopt;
    Int r = isqrt_floor(n);
    if (r * r == n) return r;
    return std::nullopt;
}

Rat sqrt_upper(const Rat &q, unsigned bits) {
    if (q < 0) throw std::invalid_argument("sqrt_upper of negative");
    if (q == 0) return Rat(0);
    // sqrt(a/b) = sqrt(a*b)/b; scale by 2^bits for resolution
    Int scale = Int(1) << bits;
    Int t = num(q) * den(q) * scale * scale;
    Int r = isqrt_ceil(t);
    return make_rat(r, den(q) * scale);
}

Rat sqrt_lower(const Rat &q, unsigned bits) {
    if (q < 0) throw std::invalid_argument("sqrt_lower of negative");
    if (q == 0) return Rat(0);
    Int scale = Int(1) << bits;
    Int t = num(q) * den(q) * scale * scale;
    Int r = isqrt_floor(t);
    return make_rat(r, den(q) * scale);
}

int podic_val(const Int &n, const Int &p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    Int m = n;
    int v = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

int podic_val(const Rat &q, const Int &p) {
    if (q == 0) throw std::invalid_argument("valuation of zero");
    Int n = num(q), d = den(q);
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) return podic_val(n, p);
    if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) return -podic_val(d, p);
    return 0;
}

bool is_probable_prime(const Int &n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int next_prime_above(const Int &n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::vector<uint32_t> primes_up_to(uint32_t limit) {
    std::vector<uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(size_t(limit) + 1, false);
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!comp[i])
            for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    for (uint32_t i = 2; i <= limit; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

namespace {

Int pollard_rho(const Int &n, splitmix64 &rng) {
    if (mpz_even_p(n.get_mpz_t())) return Int(2);
    for (;;) {
        Int c(rng.below(1000000) + 1);
        Int x(Int(rng.below(1000000)) + 2), y = x, d(1);
        Int diff;
        int iter = 0;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            diff = x - y;
            if (diff == 0) break; // cycle, retry with new c
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            if (++iter > 2000000) throw std::runtime_error("pollard rho stuck");
        }
        if (d != 0 && d != 1 && d != n) return d;
    }
}

void factor_rec(const Int &n, std::map<Int, int> &out, splitmix64 &rng) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_rho(n, rng);
    factor_rec(d, out, rng);
    factor_rec(n / d, out, rng);
}

} // namespace

std::map<Int, int> factorize(const Int &n_in) {
    if (n_in == 0) throw std::invalid_argument("factorize(0)");
    Int n = abs(n_in);
    std::map<Int, int> out;
    static const std::vector<uint32_t> small = primes_up_to(100000);
    for (uint32_t p : small) {
        if (n == 1) return out;
        Int P(p);
        if (P * P > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[P] += 1;
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    if (n == 1) return out;
    splitmix64 rng(0x5eedULL);
    factor_rec(n, out, rng);
    return out;
}

std::string rat_str(const Rat &q) {
    if (is_int(q)) return num(q).get_str();
    return num(q).get_str() + "/" + den(q).get_str();
}

Rat parse_rat(const std::string &s) {
    auto pos = s.find('/');
    try {
        if (pos == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, pos)), d(s.substr(pos + 1));
        return make_rat(n, d);
    } catch (const std::invalid_argument &) {
        fail(errc::config_error, "bad rational literal '" + s + "'");
    }
}

} // namespace diodef
