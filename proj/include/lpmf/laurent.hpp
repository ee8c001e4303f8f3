#ifndef LPMF_LAURENT_HPP
#define LPMF_LAURENT_HPP

#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "lpmf/scalar.hpp"

namespace lpmf {

/// Degree of the zero polynomial: a distinguished minus-infinity sentinel
/// so the strict-decrease invariant of the division chain is expressible.
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

/// Finitely supported sum  sum_e c_e z^{-e}  over Q or Q(i).
/// Exponents e >= 0 form the polynomial part in t = z^{-1}; stored
/// coefficients are always nonzero (trimmed support).
class LaurentPoly {
public:
    explicit LaurentPoly(Field f = Field::rational) : field_(f) {}

    static LaurentPoly zero(Field f) { return LaurentPoly(f); }
    static LaurentPoly constant(const FieldScalar& c);
    /// c * z^{-e}
    static LaurentPoly monomial(const FieldScalar& c, int e);

    Field field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const std::map<int, FieldScalar>& terms() const { return terms_; }

    FieldScalar coeff(int e) const;
    void set_coeff(int e, const FieldScalar& c); // erases on zero

    int min_exp() const; // throws ZERO_INPUT on the zero polynomial
    int max_exp() const; // throws ZERO_INPUT on the zero polynomial
    /// t-degree (= max exponent); kNegInfDegree for the zero polynomial.
    int degree() const { return terms_.empty() ? kNegInfDegree : terms_.rbegin()->first; }
    /// True when all exponents are >= 0, i.e. a polynomial in t = z^{-1}.
    bool is_poly_in_t() const { return terms_.empty() || terms_.begin()->first >= 0; }

    /// Sum of all coefficients; the values at z = 1 and t = 1 coincide.
    FieldScalar eval_one() const;
    /// Conjugate every coefficient and negate every exponent.
    LaurentPoly adjoint() const;
    LaurentPoly negate() const;
    /// Multiply by z^{-shift} (adds shift to every exponent).
    LaurentPoly shifted(int shift) const;

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly operator*(const FieldScalar& c) const;
    LaurentPoly& operator+=(const LaurentPoly& b);
    LaurentPoly& operator-=(const LaurentPoly& b);
    /// *this += a * b, accumulating in place
    void add_mul(const LaurentPoly& a, const LaurentPoly& b);
    /// *this -= a * b
    void sub_mul(const LaurentPoly& a, const LaurentPoly& b);
    /// *this += a * c for a scalar c
    void add_scaled(const LaurentPoly& a, const FieldScalar& c);
    /// *this += a * c * z^{-shift}
    void add_scaled_shifted(const LaurentPoly& a, const FieldScalar& c, int shift);

    bool operator==(const LaurentPoly& b) const {
        return field_ == b.field_ && terms_ == b.terms_;
    }
    bool operator!=(const LaurentPoly& b) const { return !(*this == b); }

private:
    Field field_;
    std::map<int, FieldScalar> terms_;

    static void require_same_field(const LaurentPoly& a, const LaurentPoly& b);
};

/// Exact division with remainder over F[t]: num = q*den + r with
/// deg(r) < deg(den). Both arguments must be polynomials in t.
std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& num, const LaurentPoly& den);

/// Full quotient/remainder chain of the Euclidean algorithm on (a, c):
///   c = q_1 a + r_1,  a = q_2 r_1 + r_2,  ...,  r_{n-1} = q_{n+1} r_n.
/// remainders holds r_1..r_n (the nonzero ones); gcd_like is the last
/// nonzero remainder, or a itself when the first division is exact.
struct EuclidTrace {
    std::vector<LaurentPoly> quotients;
    std::vector<LaurentPoly> remainders;
    LaurentPoly gcd_like;
};

/// Requires a, c nonzero polynomials in t with deg(a) <= deg(c); the caller
/// orients the inputs (this controls the elementary index pattern).
EuclidTrace euclid_trace(const LaurentPoly& a, const LaurentPoly& c);

} // namespace lpmf

#endif
