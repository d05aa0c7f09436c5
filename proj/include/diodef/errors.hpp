#ifndef DIODEF_ERRORS_HPP
#define DIODEF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace diodef {

enum class errc {
    not_monic,
    reducible,
    zero_degree,
    division_by_zero,
    field_mismatch,
    non_real_embedding,
    degree_budget_exceeded,
    ramified_or_index_divisor,
    support_hits_bad_prime,
    non_integral,
    denominators_not_coprime,
    point_not_on_curve,
    identity_point,
    bad_reduction,
    zero_x_coordinate,
    precision_exhausted,
    hypothesis_violated,
    perfect_square,
    subfield_data_missing,
    order_budget_exceeded,
    budget_exhausted,
    bezout_failure,
    dependent_family,
    non_unit_generator,
    sieve_budget_exhausted,
    inconsistent,
    config_error,
};

const char *errc_name(errc c);

class nt_error : public std::runtime_error {
  public:
    nt_error(errc c, const std::string &what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string &what) { throw nt_error(c, what); }

} // namespace diodef

#endif
