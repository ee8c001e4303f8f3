#ifndef LPMF_ERROR_HPP
#define LPMF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lpmf {

enum class Errc {
    division_by_zero,
    field_mismatch,
    parse_error,
    zero_denominator,
    not_polynomial,
    zero_input,
    degree_order,
    rank_mismatch,
    not_unimodular,
    zero_matrix,
    not_monomial_det,
    support_violation,
    product_not_identity,
    eval_one_not_identity,
    empty_sequence,
    nonincreasing_exponents,
    zero_coefficient,
    rank_not_two,
    constant_c,
    bad_params,
    residual_constant_not_identity,
    quadratic_violation,
    linear_violation,
    not_unit_vector,
    haar_undefined,
    haar_invalid,
    genus_violation,
    schema_error,
    io_error,
};

/// Stable upper-case name, e.g. "DIVISION_BY_ZERO". Used in reports.
const char* errc_name(Errc c);

/// True for usage/parse/IO-class errors (CLI exit 1); false for
/// mathematical/definitional violations (CLI exit 2).
bool errc_is_usage(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace lpmf

#endif
