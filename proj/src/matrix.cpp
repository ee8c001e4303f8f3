#include "lpmf/matrix.hpp"

#include <algorithm>

namespace lpmf {

ConstMatrix::ConstMatrix(int rank, Field f)
    : rank_(rank), field_(f), a_(static_cast<size_t>(rank) * rank, FieldScalar::zero(f)) {
    if (rank < 1) throw Error(Errc::bad_params, "matrix rank must be >= 1");
}

ConstMatrix ConstMatrix::identity(int rank, Field f) {
    ConstMatrix m(rank, f);
    for (int i = 0; i < rank; ++i) m.at(i, i) = FieldScalar::one(f);
    return m;
}

ConstMatrix ConstMatrix::unit_scaled(int rank, int i, int j, const FieldScalar& c) {
    ConstMatrix m(rank, c.field());
    m.at(i, j) = c;
    return m;
}

bool ConstMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const FieldScalar& x) { return x.is_zero(); });
}

bool ConstMatrix::is_identity() const {
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) {
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        }
    return true;
}

bool ConstMatrix::is_diagonal() const {
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            if (i != j && !at(i, j).is_zero()) return false;
    return true;
}

ConstMatrix ConstMatrix::conj_transpose() const {
    ConstMatrix m(rank_, field_);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) m.at(j, i) = at(i, j).conj();
    return m;
}

ConstMatrix ConstMatrix::negate() const {
    ConstMatrix m(rank_, field_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].negate();
    return m;
}

FieldScalar ConstMatrix::det() const {
    // exact Gaussian elimination with partial pivoting by nonzero entry
    ConstMatrix w = *this;
    FieldScalar result = FieldScalar::one(field_);
    for (int p = 0; p < rank_; ++p) {
        int pivot = -1;
        for (int i = p; i < rank_; ++i)
            if (!w.at(i, p).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) return FieldScalar::zero(field_);
        if (pivot != p) {
            for (int j = p; j < rank_; ++j) std::swap(w.at(pivot, j), w.at(p, j));
            result = result.negate();
        }
        result *= w.at(p, p);
        FieldScalar inv = w.at(p, p).inverse();
        for (int i = p + 1; i < rank_; ++i) {
            if (w.at(i, p).is_zero()) continue;
            FieldScalar factor = w.at(i, p) * inv;
            for (int j = p; j < rank_; ++j) w.at(i, j) -= factor * w.at(p, j);
        }
    }
    return result;
}

ConstMatrix ConstMatrix::inverse() const {
    // Gauss-Jordan over the field
    ConstMatrix w = *this;
    ConstMatrix inv = identity(rank_, field_);
    for (int p = 0; p < rank_; ++p) {
        int pivot = -1;
        for (int i = p; i < rank_; ++i)
            if (!w.at(i, p).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) throw Error(Errc::division_by_zero, "inverse of singular constant matrix");
        if (pivot != p)
            for (int j = 0; j < rank_; ++j) {
                std::swap(w.at(pivot, j), w.at(p, j));
                std::swap(inv.at(pivot, j), inv.at(p, j));
            }
        FieldScalar scale = w.at(p, p).inverse();
        for (int j = 0; j < rank_; ++j) {
            w.at(p, j) *= scale;
            inv.at(p, j) *= scale;
        }
        for (int i = 0; i < rank_; ++i) {
            if (i == p || w.at(i, p).is_zero()) continue;
            FieldScalar factor = w.at(i, p);
            for (int j = 0; j < rank_; ++j) {
                w.at(i, j) -= factor * w.at(p, j);
                inv.at(i, j) -= factor * inv.at(p, j);
            }
        }
    }
    return inv;
}

bool ConstMatrix::squares_to_zero() const {
    return (*this * *this).is_zero();
}

void ConstMatrix::require_compatible(const ConstMatrix& x, const ConstMatrix& y) {
    if (x.rank_ != y.rank_) throw Error(Errc::rank_mismatch, "constant matrix ranks differ");
    if (x.field_ != y.field_) throw Error(Errc::field_mismatch, "constant matrix fields differ");
}

ConstMatrix operator+(const ConstMatrix& x, const ConstMatrix& y) {
    ConstMatrix::require_compatible(x, y);
    ConstMatrix m(x.rank_, x.field_);
    for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = x.a_[k] + y.a_[k];
    return m;
}

ConstMatrix operator-(const ConstMatrix& x, const ConstMatrix& y) {
    ConstMatrix::require_compatible(x, y);
    ConstMatrix m(x.rank_, x.field_);
    for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = x.a_[k] - y.a_[k];
    return m;
}

ConstMatrix operator*(const ConstMatrix& x, const ConstMatrix& y) {
    ConstMatrix::require_compatible(x, y);
    const int m = x.rank_;
    ConstMatrix r(m, x.field_);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            if (x.at(i, k).is_zero()) continue;
            for (int j = 0; j < m; ++j) {
                if (y.at(k, j).is_zero()) continue;
                r.at(i, j).add_mul(x.at(i, k), y.at(k, j));
            }
        }
    return r;
}

ConstMatrix ConstMatrix::operator*(const FieldScalar& c) const {
    ConstMatrix m(rank_, field_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * c;
    return m;
}

LPMatrix::LPMatrix(int rank, Field f)
    : rank_(rank), field_(f), e_(static_cast<size_t>(rank) * rank, LaurentPoly(f)) {
    if (rank < 1) throw Error(Errc::bad_params, "matrix rank must be >= 1");
}

LPMatrix LPMatrix::identity(int rank, Field f) {
    LPMatrix m(rank, f);
    for (int i = 0; i < rank; ++i) m.at(i, i) = LaurentPoly::constant(FieldScalar::one(f));
    return m;
}

LPMatrix LPMatrix::from_const(const ConstMatrix& c) {
    LPMatrix m(c.rank(), c.field());
    for (int i = 0; i < c.rank(); ++i)
        for (int j = 0; j < c.rank(); ++j) m.at(i, j) = LaurentPoly::constant(c.at(i, j));
    return m;
}

bool LPMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

bool LPMatrix::is_identity() const {
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) {
            const LaurentPoly& p = at(i, j);
            if (i == j) {
                if (!(p.is_constant() && !p.is_zero() && p.coeff(0).is_one())) return false;
            } else if (!p.is_zero()) {
                return false;
            }
        }
    return true;
}

bool LPMatrix::is_poly_in_t() const {
    return std::all_of(e_.begin(), e_.end(), [](const LaurentPoly& p) { return p.is_poly_in_t(); });
}

int LPMatrix::degree() const {
    int d = kNegInfDegree;
    for (const auto& p : e_) d = std::max(d, p.degree());
    return d;
}

LPMatrix LPMatrix::shifted(int shift) const {
    LPMatrix m(rank_, field_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k].shifted(shift);
    return m;
}

void LPMatrix::require_compatible(const LPMatrix& x, const LPMatrix& y) {
    if (x.rank_ != y.rank_) throw Error(Errc::rank_mismatch, "matrix ranks differ");
    if (x.field_ != y.field_) throw Error(Errc::field_mismatch, "matrix fields differ");
}

LPMatrix mat_mul(const LPMatrix& a, const LPMatrix& b) {
    LPMatrix::require_compatible(a, b);
    const int m = a.rank_;
    LPMatrix r(m, a.field_);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            const LaurentPoly& x = a.at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < m; ++j) {
                const LaurentPoly& y = b.at(k, j);
                if (y.is_zero()) continue;
                r.at(i, j).add_mul(x, y);
            }
        }
    return r;
}

LPMatrix mat_adjoint(const LPMatrix& a) {
    LPMatrix r(a.rank(), a.field());
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) r.at(j, i) = a.at(i, j).adjoint();
    return r;
}

namespace {

LaurentPoly det_cofactor_impl(const LPMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
    const size_t n = rows.size();
    if (n == 1) return a.at(rows[0], cols[0]);
    LaurentPoly acc(a.field());
    const int top = rows[0];
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (size_t jc = 0; jc < n; ++jc) {
        const LaurentPoly& entry = a.at(top, cols[jc]);
        if (entry.is_zero()) continue;
        std::vector<int> sub_cols;
        sub_cols.reserve(n - 1);
        for (size_t k = 0; k < n; ++k)
            if (k != jc) sub_cols.push_back(cols[k]);
        LaurentPoly minor = det_cofactor_impl(a, sub_rows, sub_cols);
        LaurentPoly term = entry * minor;
        acc = (jc % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

LaurentPoly mat_det_cofactor(const LPMatrix& a) {
    std::vector<int> rows(a.rank()), cols(a.rank());
    for (int i = 0; i < a.rank(); ++i) rows[i] = cols[i] = i;
    return det_cofactor_impl(a, rows, cols);
}

LaurentPoly mat_det_bareiss(const LPMatrix& a) {
    const int m = a.rank();
    // clear a common z-power so every entry becomes a polynomial in t
    int shift = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const LaurentPoly& p = a.at(i, j);
            if (!p.is_zero()) shift = std::min(shift, p.min_exp());
        }
    LPMatrix w = a.shifted(-shift);

    const Field f = a.field();
    LaurentPoly prev = LaurentPoly::constant(FieldScalar::one(f));
    int sign = 1;
    for (int p = 0; p < m - 1; ++p) {
        if (w.at(p, p).is_zero()) {
            int pivot = -1;
            for (int i = p + 1; i < m; ++i)
                if (!w.at(i, p).is_zero()) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return LaurentPoly::zero(f);
            for (int j = 0; j < m; ++j) std::swap(w.at(pivot, j), w.at(p, j));
            sign = -sign;
        }
        for (int i = p + 1; i < m; ++i) {
            for (int j = p + 1; j < m; ++j) {
                LaurentPoly num = w.at(p, p) * w.at(i, j) - w.at(i, p) * w.at(p, j);
                auto [q, r] = poly_divmod(num, prev);
                if (!r.is_zero())
                    throw Error(Errc::division_by_zero, "Bareiss division was not exact");
                w.at(i, j) = q;
            }
            w.at(i, p) = LaurentPoly::zero(f);
        }
        prev = w.at(p, p);
        if (prev.is_zero()) return LaurentPoly::zero(f);
    }
    LaurentPoly det = w.at(m - 1, m - 1).shifted(m * shift);
    if (sign < 0) det = det.negate();
    return det;
}

LaurentPoly mat_det(const LPMatrix& a) {
    return a.rank() <= 4 ? mat_det_cofactor(a) : mat_det_bareiss(a);
}

LPMatrix mat_inverse_unimodular(const LPMatrix& a) {
    LaurentPoly det = mat_det(a);
    if (!(det.is_constant() && !det.is_zero() && det.coeff(0).is_one()))
        throw Error(Errc::not_unimodular, "determinant is not 1");
    const int m = a.rank();
    if (m == 1) return LPMatrix::identity(1, a.field());
    LPMatrix inv(m, a.field());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            // adjugate: cof(j, i)
            std::vector<int> rows, cols;
            for (int k = 0; k < m; ++k) {
                if (k != j) rows.push_back(k);
                if (k != i) cols.push_back(k);
            }
            LaurentPoly minor = det_cofactor_impl(a, rows, cols);
            inv.at(i, j) = ((i + j) % 2 == 0) ? minor : minor.negate();
        }
    return inv;
}

ConstMatrix mat_eval_one(const LPMatrix& a) {
    ConstMatrix r(a.rank(), a.field());
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) r.at(i, j) = a.at(i, j).eval_one();
    return r;
}

ConstMatrix coefficient_block(const LPMatrix& a, int k) {
    ConstMatrix r(a.rank(), a.field());
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) r.at(i, j) = a.at(i, j).coeff(k);
    return r;
}

BlockForm to_block_form(const LPMatrix& a) {
    if (a.is_zero()) throw Error(Errc::zero_matrix, "block form of the zero matrix");
    bool first = true;
    int k0 = 0, k1 = 0;
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) {
            const LaurentPoly& p = a.at(i, j);
            if (p.is_zero()) continue;
            if (first) {
                k0 = p.min_exp();
                k1 = p.max_exp();
                first = false;
            } else {
                k0 = std::min(k0, p.min_exp());
                k1 = std::max(k1, p.max_exp());
            }
        }
    BlockForm b;
    b.k0 = k0;
    b.k1 = k1;
    for (int k = k0; k <= k1; ++k) b.blocks.push_back(coefficient_block(a, k));
    return b;
}

LPMatrix from_block_form(const BlockForm& b) {
    if (b.blocks.empty()) throw Error(Errc::zero_matrix, "block form with no blocks");
    const int m = b.blocks.front().rank();
    const Field f = b.blocks.front().field();
    LPMatrix a(m, f);
    for (size_t idx = 0; idx < b.blocks.size(); ++idx) {
        const int k = b.k0 + static_cast<int>(idx);
        const ConstMatrix& blk = b.blocks[idx];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (!blk.at(i, j).is_zero()) a.at(i, j).set_coeff(k, blk.at(i, j));
    }
    return a;
}

int genus(const LPMatrix& a) {
    return to_block_form(a).genus();
}

std::pair<int, FieldScalar> monomial_det_exponent(const LPMatrix& a) {
    LaurentPoly det = mat_det(a);
    if (det.is_zero() || det.terms().size() != 1)
        throw Error(Errc::not_monomial_det, "determinant is not a nonzero monomial");
    const auto& [e, c] = *det.terms().begin();
    return {e, c};
}

} // namespace lpmf
