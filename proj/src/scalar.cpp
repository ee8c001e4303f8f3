#include "lpmf/scalar.hpp"

#include <cctype>

namespace lpmf {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::division_by_zero: return "DIVISION_BY_ZERO";
    case Errc::field_mismatch: return "FIELD_MISMATCH";
    case Errc::parse_error: return "PARSE_ERROR";
    case Errc::zero_denominator: return "ZERO_DENOMINATOR";
    case Errc::not_polynomial: return "NOT_POLYNOMIAL";
    case Errc::zero_input: return "ZERO_INPUT";
    case Errc::degree_order: return "DEGREE_ORDER";
    case Errc::rank_mismatch: return "RANK_MISMATCH";
    case Errc::not_unimodular: return "NOT_UNIMODULAR";
    case Errc::zero_matrix: return "ZERO_MATRIX";
    case Errc::not_monomial_det: return "NOT_MONOMIAL_DET";
    case Errc::support_violation: return "SUPPORT_VIOLATION";
    case Errc::product_not_identity: return "PRODUCT_NOT_IDENTITY";
    case Errc::eval_one_not_identity: return "EVAL_ONE_NOT_IDENTITY";
    case Errc::empty_sequence: return "EMPTY_SEQUENCE";
    case Errc::nonincreasing_exponents: return "NONINCREASING_EXPONENTS";
    case Errc::zero_coefficient: return "ZERO_COEFFICIENT";
    case Errc::rank_not_two: return "RANK_NOT_TWO";
    case Errc::constant_c: return "CONSTANT_C";
    case Errc::bad_params: return "BAD_PARAMS";
    case Errc::residual_constant_not_identity: return "RESIDUAL_CONSTANT_NOT_IDENTITY";
    case Errc::quadratic_violation: return "QUADRATIC_VIOLATION";
    case Errc::linear_violation: return "LINEAR_VIOLATION";
    case Errc::not_unit_vector: return "NOT_UNIT_VECTOR";
    case Errc::haar_undefined: return "HAAR_UNDEFINED";
    case Errc::haar_invalid: return "HAAR_INVALID";
    case Errc::genus_violation: return "GENUS_VIOLATION";
    case Errc::schema_error: return "SCHEMA_ERROR";
    case Errc::io_error: return "IO_ERROR";
    }
    return "UNKNOWN";
}

bool errc_is_usage(Errc c) {
    switch (c) {
    case Errc::parse_error:
    case Errc::zero_denominator:
    case Errc::empty_sequence:
    case Errc::nonincreasing_exponents:
    case Errc::zero_coefficient:
    case Errc::bad_params:
    case Errc::schema_error:
    case Errc::io_error:
        return true;
    default:
        return false;
    }
}

const char* field_name(Field f) {
    return f == Field::rational ? "Q" : "Q(i)";
}

Field field_from_name(std::string_view name) {
    if (name == "Q") return Field::rational;
    if (name == "Q(i)") return Field::gaussian_rational;
    throw Error(Errc::schema_error, "unknown field \"" + std::string(name) + "\" (expected \"Q\" or \"Q(i)\")");
}

FieldScalar FieldScalar::from_int(long n, Field f) {
    FieldScalar s(f);
    s.re_ = n;
    return s;
}

FieldScalar FieldScalar::from_mpq(mpq_class re, Field f) {
    FieldScalar s(f);
    re.canonicalize();
    s.re_ = std::move(re);
    return s;
}

FieldScalar FieldScalar::gaussian(mpq_class re, mpq_class im) {
    FieldScalar s(Field::gaussian_rational);
    re.canonicalize();
    im.canonicalize();
    s.re_ = std::move(re);
    s.im_ = std::move(im);
    return s;
}

void FieldScalar::require_same_field(const FieldScalar& x, const FieldScalar& y) {
    if (x.field_ != y.field_)
        throw Error(Errc::field_mismatch,
                    std::string(field_name(x.field_)) + " vs " + field_name(y.field_));
}

FieldScalar FieldScalar::conj() const {
    FieldScalar s(field_);
    s.re_ = re_;
    s.im_ = -im_;
    return s;
}

FieldScalar FieldScalar::negate() const {
    FieldScalar s(field_);
    s.re_ = -re_;
    s.im_ = -im_;
    return s;
}

FieldScalar FieldScalar::inverse() const {
    if (is_zero()) throw Error(Errc::division_by_zero, "inverse of zero");
    FieldScalar s(field_);
    if (sgn(im_) == 0) {
        s.re_ = 1 / re_;
    } else {
        mpq_class norm = re_ * re_ + im_ * im_; // |x|^2, nonzero
        s.re_ = re_ / norm;
        s.im_ = -im_ / norm;
    }
    return s;
}

FieldScalar operator+(const FieldScalar& x, const FieldScalar& y) {
    FieldScalar::require_same_field(x, y);
    FieldScalar s(x.field_);
    s.re_ = x.re_ + y.re_;
    s.im_ = x.im_ + y.im_;
    return s;
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& y) {
    require_same_field(*this, y);
    re_ += y.re_;
    im_ += y.im_;
    return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& y) {
    require_same_field(*this, y);
    re_ -= y.re_;
    im_ -= y.im_;
    return *this;
}

void FieldScalar::add_mul(const FieldScalar& x, const FieldScalar& y) {
    require_same_field(x, y);
    require_same_field(*this, x);
    if (sgn(x.im_) == 0 && sgn(y.im_) == 0) {
        re_ += x.re_ * y.re_;
    } else {
        re_ += x.re_ * y.re_ - x.im_ * y.im_;
        im_ += x.re_ * y.im_ + x.im_ * y.re_;
    }
}

FieldScalar operator-(const FieldScalar& x, const FieldScalar& y) {
    FieldScalar::require_same_field(x, y);
    FieldScalar s(x.field_);
    s.re_ = x.re_ - y.re_;
    s.im_ = x.im_ - y.im_;
    return s;
}

FieldScalar operator*(const FieldScalar& x, const FieldScalar& y) {
    FieldScalar::require_same_field(x, y);
    FieldScalar s(x.field_);
    if (sgn(x.im_) == 0 && sgn(y.im_) == 0) {
        s.re_ = x.re_ * y.re_;
    } else {
        s.re_ = x.re_ * y.re_ - x.im_ * y.im_;
        s.im_ = x.re_ * y.im_ + x.im_ * y.re_;
    }
    return s;
}

FieldScalar operator/(const FieldScalar& x, const FieldScalar& y) {
    FieldScalar::require_same_field(x, y);
    if (y.is_zero()) throw Error(Errc::division_by_zero, "scalar division by zero");
    return x * y.inverse();
}

namespace {

struct Cursor {
    std::string_view text;
    size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(Errc::parse_error,
                    what + " at position " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
    }

    // [sign] digits, as an exact integer
    mpz_class integer(bool allow_sign) {
        size_t start = pos;
        bool neg = false;
        if (allow_sign && (peek() == '+' || peek() == '-')) {
            neg = text[pos] == '-';
            ++pos;
        }
        if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected digit");
        std::string digits;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek())))
            digits += text[pos++];
        (void)start;
        mpz_class v(digits, 10);
        return neg ? mpz_class(-v) : v;
    }

    // integer [ '/' integer-nonzero ]
    mpq_class rational(bool allow_sign_on_num) {
        mpz_class num = integer(allow_sign_on_num);
        mpz_class den = 1;
        if (peek() == '/') {
            ++pos;
            den = integer(true);
            if (den == 0) throw Error(Errc::zero_denominator, "\"" + std::string(text) + "\"");
        }
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
};

} // namespace

FieldScalar scalar_parse(std::string_view text, Field f) {
    Cursor c{text};
    if (c.done()) c.fail("empty scalar");
    mpq_class re = c.rational(true);
    if (c.done()) {
        return f == Field::rational ? FieldScalar::from_mpq(re)
                                    : FieldScalar::gaussian(re, 0);
    }
    if (c.peek() != '+' && c.peek() != '-') c.fail("expected '+', '-' or end");
    bool neg = c.peek() == '-';
    ++c.pos;
    mpq_class im = c.rational(false);
    if (c.peek() != 'i') c.fail("expected 'i'");
    ++c.pos;
    if (!c.done()) c.fail("trailing characters");
    if (neg) im = -im;
    if (f == Field::rational)
        c.fail("imaginary part not allowed over Q");
    return FieldScalar::gaussian(re, im);
}

namespace {

std::string format_mpq(const mpq_class& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

} // namespace

std::string scalar_format(const FieldScalar& x) {
    std::string out = format_mpq(x.re());
    if (sgn(x.im()) != 0) {
        mpq_class im = x.im();
        if (sgn(im) < 0) {
            out += "-";
            im = -im;
        } else {
            out += "+";
        }
        out += format_mpq(im) + "i";
    }
    return out;
}

} // namespace lpmf
