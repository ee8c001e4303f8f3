#ifndef LPMF_MATRIX_HPP
#define LPMF_MATRIX_HPP

#include <vector>

#include "lpmf/laurent.hpp"

namespace lpmf {

/// Constant m x m matrix over the scalar field. Used for coefficient
/// blocks, nilpotent factors, diagonal residues and the Haar matrix.
class ConstMatrix {
public:
    ConstMatrix() : rank_(0), field_(Field::rational) {}
    ConstMatrix(int rank, Field f);

    static ConstMatrix identity(int rank, Field f);
    /// unit matrix E_ij scaled by c (0-based indices)
    static ConstMatrix unit_scaled(int rank, int i, int j, const FieldScalar& c);

    int rank() const { return rank_; }
    Field field() const { return field_; }

    FieldScalar& at(int i, int j) { return a_[static_cast<size_t>(i) * rank_ + j]; }
    const FieldScalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * rank_ + j]; }

    bool is_zero() const;
    bool is_identity() const;
    bool is_diagonal() const;

    ConstMatrix conj_transpose() const;
    ConstMatrix negate() const;
    FieldScalar det() const;           // exact Gaussian elimination
    ConstMatrix inverse() const;       // throws NOT_UNIMODULAR-style check? general: DIVISION_BY_ZERO on singular
    bool is_invertible() const { return !det().is_zero(); }
    /// N*N == 0
    bool squares_to_zero() const;

    friend ConstMatrix operator+(const ConstMatrix& x, const ConstMatrix& y);
    friend ConstMatrix operator-(const ConstMatrix& x, const ConstMatrix& y);
    friend ConstMatrix operator*(const ConstMatrix& x, const ConstMatrix& y);
    ConstMatrix operator*(const FieldScalar& c) const;

    bool operator==(const ConstMatrix& y) const {
        return rank_ == y.rank_ && field_ == y.field_ && a_ == y.a_;
    }
    bool operator!=(const ConstMatrix& y) const { return !(*this == y); }

private:
    int rank_;
    Field field_;
    std::vector<FieldScalar> a_;

    static void require_compatible(const ConstMatrix& x, const ConstMatrix& y);
};

/// m x m matrix over the Laurent ring F[z, z^-1].
class LPMatrix {
public:
    LPMatrix() : rank_(0), field_(Field::rational) {}
    LPMatrix(int rank, Field f);

    static LPMatrix identity(int rank, Field f);
    static LPMatrix from_const(const ConstMatrix& c);

    int rank() const { return rank_; }
    Field field() const { return field_; }

    LaurentPoly& at(int i, int j) { return e_[static_cast<size_t>(i) * rank_ + j]; }
    const LaurentPoly& at(int i, int j) const { return e_[static_cast<size_t>(i) * rank_ + j]; }

    bool is_zero() const;
    bool is_identity() const;
    /// True when every entry is a polynomial in t = z^-1 (support k >= 0).
    bool is_poly_in_t() const;
    /// Largest t-degree over all entries; kNegInfDegree for the zero matrix.
    int degree() const;

    /// Multiply every entry by z^{-shift}.
    LPMatrix shifted(int shift) const;

    bool operator==(const LPMatrix& y) const {
        return rank_ == y.rank_ && field_ == y.field_ && e_ == y.e_;
    }
    bool operator!=(const LPMatrix& y) const { return !(*this == y); }

private:
    int rank_;
    Field field_;
    std::vector<LaurentPoly> e_;

    static void require_compatible(const LPMatrix& x, const LPMatrix& y);

    friend LPMatrix mat_mul(const LPMatrix& a, const LPMatrix& b);
};

LPMatrix mat_mul(const LPMatrix& a, const LPMatrix& b);
inline LPMatrix operator*(const LPMatrix& a, const LPMatrix& b) { return mat_mul(a, b); }

/// Paraconjugate: conjugate-transpose of coefficient blocks with z -> z^-1.
LPMatrix mat_adjoint(const LPMatrix& a);

/// Exact determinant: cofactor expansion for rank <= 4, fraction-free
/// (Bareiss) elimination over F[t] after clearing a common z-power above.
LaurentPoly mat_det(const LPMatrix& a);

/// The two routes behind mat_det, exposed so tests can cross-check them.
LaurentPoly mat_det_cofactor(const LPMatrix& a);
LaurentPoly mat_det_bareiss(const LPMatrix& a);

/// Adjugate-based inverse, restricted to det(A) = 1 (throws NOT_UNIMODULAR).
LPMatrix mat_inverse_unimodular(const LPMatrix& a);

/// Entrywise evaluation at z = 1.
ConstMatrix mat_eval_one(const LPMatrix& a);

/// Coefficient block A_k (of z^{-k}).
ConstMatrix coefficient_block(const LPMatrix& a, int k);

/// Tight block (Laurent series) form A = (A_{k0}, ..., A_{k1}).
struct BlockForm {
    int k0 = 0;
    int k1 = 0;
    std::vector<ConstMatrix> blocks; // blocks[i] is the coefficient of z^{-(k0+i)}

    int genus() const { return k1 - k0 + 1; }
};

BlockForm to_block_form(const LPMatrix& a); // throws ZERO_MATRIX
LPMatrix from_block_form(const BlockForm& b);

/// Genus g = k1 - k0 + 1 of a nonzero matrix.
int genus(const LPMatrix& a);

/// For det(A) = c * z^{-b} (a nonzero monomial), returns (b, c);
/// throws NOT_MONOMIAL_DET otherwise.
std::pair<int, FieldScalar> monomial_det_exponent(const LPMatrix& a);

} // namespace lpmf

#endif
