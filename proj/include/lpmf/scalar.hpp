#ifndef LPMF_SCALAR_HPP
#define LPMF_SCALAR_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "lpmf/error.hpp"

namespace lpmf {

enum class Field { rational, gaussian_rational };

const char* field_name(Field f);              // "Q" or "Q(i)"
Field field_from_name(std::string_view name); // inverse, throws SCHEMA_ERROR

/// Exact element of Q or Q(i). Both components are kept in canonical
/// lowest terms with positive denominator (mpq invariant); the imaginary
/// part of a rational-field scalar is identically zero.
class FieldScalar {
public:
    FieldScalar() : field_(Field::rational) {}
    explicit FieldScalar(Field f) : field_(f) {}

    static FieldScalar from_int(long n, Field f = Field::rational);
    static FieldScalar from_mpq(mpq_class re, Field f = Field::rational);
    static FieldScalar gaussian(mpq_class re, mpq_class im);
    static FieldScalar zero(Field f) { return FieldScalar(f); }
    static FieldScalar one(Field f) { return from_int(1, f); }

    Field field() const { return field_; }
    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    FieldScalar conj() const;
    FieldScalar negate() const;
    FieldScalar inverse() const; // throws DIVISION_BY_ZERO

    friend FieldScalar operator+(const FieldScalar& x, const FieldScalar& y);
    friend FieldScalar operator-(const FieldScalar& x, const FieldScalar& y);
    friend FieldScalar operator*(const FieldScalar& x, const FieldScalar& y);
    friend FieldScalar operator/(const FieldScalar& x, const FieldScalar& y);
    FieldScalar& operator+=(const FieldScalar& y);
    FieldScalar& operator-=(const FieldScalar& y);
    FieldScalar& operator*=(const FieldScalar& y) { return *this = *this * y; }
    /// *this += x * y, without a scalar temporary for the rational case
    void add_mul(const FieldScalar& x, const FieldScalar& y);

    bool operator==(const FieldScalar& y) const {
        return field_ == y.field_ && re_ == y.re_ && im_ == y.im_;
    }
    bool operator!=(const FieldScalar& y) const { return !(*this == y); }

private:
    Field field_;
    mpq_class re_;
    mpq_class im_;

    static void require_same_field(const FieldScalar& x, const FieldScalar& y);
};

/// Parse the exact text grammar `p[/q]` or `p[/q](+|-)r[/s]i` with decimal
/// integers. Throws PARSE_ERROR (with character position in the message)
/// or ZERO_DENOMINATOR. An imaginary part is rejected for Field::rational.
FieldScalar scalar_parse(std::string_view text, Field f);

/// Canonical text form; scalar_parse(scalar_format(x), x.field()) == x.
std::string scalar_format(const FieldScalar& x);

} // namespace lpmf

#endif
