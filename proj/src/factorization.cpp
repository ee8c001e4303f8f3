#include "lpmf/factorization.hpp"

#include <algorithm>

#include "lpmf/pseudoidentity.hpp"

namespace lpmf {

PrimitiveFactor make_primitive_factor(ConstMatrix N, int k) {
    if (k < 1) throw Error(Errc::bad_params, "primitive factor shift must be >= 1");
    if (N.is_zero()) throw Error(Errc::bad_params, "primitive factor N must be nonzero");
    if (!N.squares_to_zero()) throw Error(Errc::bad_params, "primitive factor requires N^2 = 0");
    return PrimitiveFactor{std::move(N), k};
}

LPMatrix left_factor_matrix(const PrimitiveFactor& f) {
    // I - N + N z^{-k}
    const int m = f.N.rank();
    LPMatrix r = LPMatrix::identity(m, f.N.field());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const FieldScalar& n = f.N.at(i, j);
            if (n.is_zero()) continue;
            LaurentPoly& p = r.at(i, j);
            p.set_coeff(0, p.coeff(0) - n);
            p.set_coeff(f.k, p.coeff(f.k) + n);
        }
    return r;
}

LPMatrix right_factor_matrix(const PrimitiveFactor& f) {
    // I + N* - N* z^{k}
    const int m = f.N.rank();
    ConstMatrix ns = f.N.conj_transpose();
    LPMatrix r = LPMatrix::identity(m, f.N.field());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const FieldScalar& n = ns.at(i, j);
            if (n.is_zero()) continue;
            LaurentPoly& p = r.at(i, j);
            p.set_coeff(0, p.coeff(0) + n);
            p.set_coeff(-f.k, p.coeff(-f.k) - n);
        }
    return r;
}

namespace {

// poly-matrix times constant matrix, entrywise scaled accumulation
LPMatrix mul_const_matrix(const LPMatrix& a, const ConstMatrix& n) {
    const int m = a.rank();
    LPMatrix r(m, a.field());
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            const LaurentPoly& x = a.at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < m; ++j) r.at(i, j).add_scaled(x, n.at(k, j));
        }
    return r;
}

} // namespace

LPMatrix compose_left(const NilFactorization& f) {
    // acc * L_N = acc + (acc N)(z^{-k} - 1)
    LPMatrix acc = LPMatrix::identity(f.rank, f.field);
    const FieldScalar one = FieldScalar::one(f.field);
    for (const auto& pf : f.factors) {
        if (pf.N.rank() != f.rank) throw Error(Errc::rank_mismatch, "factor rank differs");
        LPMatrix b = mul_const_matrix(acc, pf.N);
        for (int i = 0; i < f.rank; ++i)
            for (int j = 0; j < f.rank; ++j) {
                acc.at(i, j).add_scaled_shifted(b.at(i, j), one, pf.k);
                acc.at(i, j) -= b.at(i, j);
            }
    }
    return acc;
}

LPMatrix compose_right(const NilFactorization& f) {
    // acc * R_N = acc + (acc N*)(1 - z^{k})
    LPMatrix acc = LPMatrix::identity(f.rank, f.field);
    const FieldScalar one = FieldScalar::one(f.field);
    for (const auto& pf : f.factors) {
        if (pf.N.rank() != f.rank) throw Error(Errc::rank_mismatch, "factor rank differs");
        LPMatrix b = mul_const_matrix(acc, pf.N.conj_transpose());
        for (int i = 0; i < f.rank; ++i)
            for (int j = 0; j < f.rank; ++j) {
                acc.at(i, j) += b.at(i, j);
                acc.at(i, j).add_scaled_shifted(b.at(i, j), one.negate(), -pf.k);
            }
    }
    return acc;
}

namespace {

// In-place application of recorded ops to a working matrix.
void apply_row_op(LPMatrix& w, int i, int j, const LaurentPoly& f) {
    for (int c = 0; c < w.rank(); ++c) w.at(i, c).add_mul(f, w.at(j, c));
}

void apply_col_op(LPMatrix& w, int i, int j, const LaurentPoly& f) {
    for (int r = 0; r < w.rank(); ++r) w.at(r, j).add_mul(f, w.at(r, i));
}

struct Reducer {
    LPMatrix w;
    std::vector<ElementaryOpRecord> left_ops, right_ops;

    void row_op(int i, int j, const LaurentPoly& f) {
        if (f.is_zero()) return;
        apply_row_op(w, i, j, f);
        left_ops.push_back({OpSide::left_row, i, j, f});
    }

    void col_op(int i, int j, const LaurentPoly& f) {
        if (f.is_zero()) return;
        apply_col_op(w, i, j, f);
        right_ops.push_back({OpSide::right_col, i, j, f});
    }

    LaurentPoly one() const { return LaurentPoly::constant(FieldScalar::one(w.field())); }

    // swap rows i, j as three type-I ops (result carries a sign, which is
    // legal: diagonal entries are only defined up to nonzero scalars here)
    void swap_rows(int i, int j) {
        LaurentPoly one_ = one();
        row_op(i, j, one_);
        row_op(j, i, one_.negate());
        row_op(i, j, one_);
    }

    void swap_cols(int i, int j) {
        LaurentPoly one_ = one();
        col_op(i, j, one_);
        col_op(j, i, one_.negate());
        col_op(i, j, one_);
    }
};

} // namespace

DiagonalizeResult diagonalize_type1(const LPMatrix& C) {
    if (!C.is_poly_in_t())
        throw Error(Errc::support_violation, "diagonalize_type1 requires support in z^{-k}, k >= 0");
    {
        LaurentPoly det = mat_det(C);
        if (!(det.is_constant() && !det.is_zero() && det.coeff(0).is_one()))
            throw Error(Errc::not_unimodular, "diagonalize_type1 requires det = 1");
    }

    const int m = C.rank();
    Reducer red{C, {}, {}};

    for (int p = 0; p < m; ++p) {
        while (true) {
            // minimal-degree nonzero pivot in the trailing submatrix, row-major ties
            int pr = -1, pc = -1, best = 0;
            for (int i = p; i < m; ++i)
                for (int j = p; j < m; ++j) {
                    const LaurentPoly& e = red.w.at(i, j);
                    if (e.is_zero()) continue;
                    if (pr < 0 || e.degree() < best) {
                        pr = i;
                        pc = j;
                        best = e.degree();
                    }
                }
            if (pr < 0)
                throw Error(Errc::not_unimodular,
                            "all-zero trailing submatrix; determinant cannot be 1");
            if (pr != p) red.swap_rows(p, pr);
            if (pc != p) red.swap_cols(p, pc);

            const LaurentPoly pivot = red.w.at(p, p);
            bool clean = true;
            for (int i = p + 1; i < m; ++i) {
                if (red.w.at(i, p).is_zero()) continue;
                auto [q, r] = poly_divmod(red.w.at(i, p), pivot);
                red.row_op(i, p, q.negate());
                if (!r.is_zero()) clean = false;
            }
            for (int j = p + 1; j < m; ++j) {
                if (red.w.at(p, j).is_zero()) continue;
                auto [q, r] = poly_divmod(red.w.at(p, j), pivot);
                red.col_op(p, j, q.negate());
                if (!r.is_zero()) clean = false;
            }
            if (clean) break;
        }
    }

    // det = 1 forces the diagonal residues to be constants
    ConstMatrix diag(m, C.field());
    for (int i = 0; i < m; ++i) {
        const LaurentPoly& d = red.w.at(i, i);
        if (!d.is_constant())
            throw Error(Errc::not_unimodular, "reduction left a nonconstant diagonal");
        diag.at(i, i) = d.coeff(0);
    }
    return DiagonalizeResult{std::move(red.left_ops), std::move(red.right_ops), std::move(diag)};
}

LeftFactorization ops_to_left_factors(const DiagonalizeResult& d) {
    LeftFactorization out;
    out.diag = d.diag;
    out.factors.reserve(d.left_ops.size() + d.right_ops.size());
    // C = A_1^{-1} ... A_u^{-1} (diag B_s^{-1} diag^{-1}) ... (diag B_1^{-1} diag^{-1}) diag
    for (const auto& op : d.left_ops)
        out.factors.push_back({op.i, op.j, op.f.negate()});
    for (auto it = d.right_ops.rbegin(); it != d.right_ops.rend(); ++it) {
        FieldScalar scale = d.diag.at(it->i, it->i) * d.diag.at(it->j, it->j).inverse();
        out.factors.push_back({it->i, it->j, it->f.negate() * scale});
    }
    return out;
}

SplitResult split_elementary(int i, int j, const LaurentPoly& f, int rank) {
    if (i == j) throw Error(Errc::bad_params, "split_elementary requires i != j");
    if (!f.is_poly_in_t())
        throw Error(Errc::not_polynomial, "split_elementary requires a polynomial in t");
    SplitResult out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [k, a] = *it;
        if (k == 0) continue;
        out.primitives.push_back(
            make_primitive_factor(ConstMatrix::unit_scaled(rank, i, j, a), k));
    }
    FieldScalar b0 = f.eval_one();
    if (!b0.is_zero()) {
        ConstMatrix tail = ConstMatrix::identity(rank, f.field());
        tail.at(i, j) = tail.at(i, j) + b0;
        out.constant_tail = std::move(tail);
    }
    return out;
}

NilFactorization conjugate_sweep(const std::vector<MixedFactor>& mixed, const ConstMatrix& tail) {
    NilFactorization out;
    out.rank = tail.rank();
    out.field = tail.field();

    ConstMatrix q = ConstMatrix::identity(tail.rank(), tail.field());
    bool q_is_identity = true;
    for (const auto& item : mixed) {
        if (std::holds_alternative<PrimitiveFactor>(item)) {
            const auto& pf = std::get<PrimitiveFactor>(item);
            if (q_is_identity) {
                out.factors.push_back(pf);
            } else {
                ConstMatrix n = q * pf.N * q.inverse();
                out.factors.push_back(make_primitive_factor(std::move(n), pf.k));
            }
        } else {
            q = q * std::get<ConstMatrix>(item);
            q_is_identity = q.is_identity();
        }
    }
    if (!(q * tail).is_identity())
        throw Error(Errc::residual_constant_not_identity,
                    "constant residue of the sweep is not the identity");
    return out;
}

namespace {

void require_factorizable(const LPMatrix& C) {
    if (!C.is_poly_in_t())
        throw Error(Errc::support_violation, "support must lie in z^{-k}, k >= 0");
    if (!mat_eval_one(C).is_identity())
        throw Error(Errc::eval_one_not_identity, "C(1) != I");
    LaurentPoly det = mat_det(C);
    if (!(det.is_constant() && !det.is_zero() && det.coeff(0).is_one()))
        throw Error(Errc::not_unimodular, "det(C) != 1");
}

std::vector<MixedFactor> split_chain(const std::vector<ElementaryFactor>& factors, int rank) {
    std::vector<MixedFactor> mixed;
    for (const auto& ef : factors) {
        SplitResult sr = split_elementary(ef.i, ef.j, ef.f, rank);
        for (auto& pf : sr.primitives) mixed.emplace_back(std::move(pf));
        if (sr.constant_tail) mixed.emplace_back(std::move(*sr.constant_tail));
    }
    return mixed;
}

} // namespace

NilFactorization factorize_nilpotent(const LPMatrix& C) {
    require_factorizable(C);
    DiagonalizeResult d = diagonalize_type1(C);
    LeftFactorization lf = ops_to_left_factors(d);
    ConstMatrix diag_full(C.rank(), C.field());
    for (int i = 0; i < C.rank(); ++i) diag_full.at(i, i) = lf.diag.at(i, i);
    return conjugate_sweep(split_chain(lf.factors, C.rank()), diag_full);
}

NilFactorization factorize_rank2_euclid(const LPMatrix& C) {
    if (C.rank() != 2) throw Error(Errc::rank_not_two, "rank-2 strategy on a different rank");
    require_factorizable(C);

    const Field f = C.field();
    const LaurentPoly a = C.at(0, 0), b = C.at(0, 1), c = C.at(1, 0);

    std::vector<ElementaryFactor> chain; // inverses of the applied row ops, product order
    ConstMatrix cprime = ConstMatrix::identity(2, f);

    if (b.is_zero() && c.is_zero()) {
        // diagonal with det 1 and C(1) = I: C = I, nothing to factor
        return NilFactorization{2, f, {}};
    }
    if (b.is_zero() || c.is_zero()) {
        // a, d are constants equal to 1; a single elementary factor remains
        if (c.is_zero())
            chain.push_back({0, 1, b});
        else
            chain.push_back({1, 0, c});
    } else {
        LPMatrix w = C;
        // Euclidean descent on the first column; the lower-degree entry
        // starts as the divisor
        int pivot_row = a.degree() <= c.degree() ? 0 : 1;
        while (!w.at(0, 0).is_zero() && !w.at(1, 0).is_zero()) {
            const int from = 1 - pivot_row;
            auto [q, r] = poly_divmod(w.at(from, 0), w.at(pivot_row, 0));
            if (!q.is_zero()) {
                apply_row_op(w, from, pivot_row, q.negate());
                chain.push_back({from, pivot_row, q});
            }
            pivot_row = from;
        }
        if (w.at(1, 0).is_zero()) {
            // [[r_n, b1], [0, d1]] with r_n d1 = 1, so both are constants
            const LaurentPoly& b1 = w.at(0, 1);
            const LaurentPoly& d1 = w.at(1, 1);
            if (!b1.is_zero()) {
                LaurentPoly g = b1 * d1.coeff(0).inverse();
                apply_row_op(w, 0, 1, g.negate());
                chain.push_back({0, 1, g});
            }
        } else {
            // [[0, b1], [r_n, d1]] with -b1 r_n = 1, so b1, r_n are constants
            const LaurentPoly& b1 = w.at(0, 1);
            const LaurentPoly& d1 = w.at(1, 1);
            if (!d1.is_zero()) {
                LaurentPoly g = d1 * b1.coeff(0).inverse();
                apply_row_op(w, 1, 0, g.negate());
                chain.push_back({1, 0, g});
            }
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                if (!w.at(i, j).is_constant())
                    throw Error(Errc::not_unimodular, "Euclidean reduction left a nonconstant residue");
                cprime.at(i, j) = w.at(i, j).coeff(0);
            }
    }

    return conjugate_sweep(split_chain(chain, 2), cprime);
}

LatticeForm lattice_form(const LPMatrix& C) {
    require_factorizable(C);
    DiagonalizeResult d = diagonalize_type1(C);
    LeftFactorization lf = ops_to_left_factors(d);

    LatticeForm out;
    out.rank = C.rank();
    out.field = C.field();
    out.diag = lf.diag;
    for (const auto& ef : lf.factors) {
        for (auto it = ef.f.terms().rbegin(); it != ef.f.terms().rend(); ++it) {
            const auto& [k, a] = *it;
            if (k == 0) continue;
            out.stages.push_back({ef.i, ef.j, a, k});
        }
        FieldScalar b0 = ef.f.eval_one();
        if (!b0.is_zero()) out.stages.push_back({ef.i, ef.j, b0, 0});
    }
    return out;
}

LPMatrix lattice_stage_matrix(const LatticeStage& s, int rank, Field f) {
    LPMatrix m = LPMatrix::identity(rank, f);
    LaurentPoly& p = m.at(s.i, s.j);
    if (s.k == 0) {
        p.set_coeff(0, p.coeff(0) + s.a);
    } else {
        p.set_coeff(0, p.coeff(0) - s.a);
        p.set_coeff(s.k, p.coeff(s.k) + s.a);
    }
    return m;
}

LPMatrix lattice_replay(const LatticeForm& lf) {
    LPMatrix acc = LPMatrix::identity(lf.rank, lf.field);
    for (const auto& s : lf.stages) acc = acc * lattice_stage_matrix(s, lf.rank, lf.field);
    return acc * LPMatrix::from_const(lf.diag);
}

LPMatrix lattice_constant_subproduct(const LatticeForm& lf) {
    LPMatrix acc = LPMatrix::identity(lf.rank, lf.field);
    for (const auto& s : lf.stages)
        if (s.k == 0) acc = acc * lattice_stage_matrix(s, lf.rank, lf.field);
    return acc * LPMatrix::from_const(lf.diag);
}

FactorizationReport verify_factorization(const LPMatrix& C, const NilFactorization& fac) {
    FactorizationReport rep;
    rep.factors_valid = true;
    for (const auto& pf : fac.factors) {
        rep.sum_k += pf.k;
        if (pf.k < 1 || pf.N.is_zero() || pf.N.rank() != fac.rank || !pf.N.squares_to_zero())
            rep.factors_valid = false;
    }
    rep.deg_t = std::max(C.degree(), 0);
    rep.genus = C.is_zero() ? 0 : genus(C);
    rep.degree_bound_ok = rep.sum_k >= rep.deg_t;
    rep.genus_sum_reading = rep.sum_k >= rep.genus;

    rep.compose_left_ok = fac.rank == C.rank() && compose_left(fac) == C;
    // compose_right must equal the derived partner D = adjoint(C^{-1});
    // the partner is unique, so C * R~ = I decides that without an adjugate
    rep.compose_right_ok =
        fac.rank == C.rank() && mat_mul(C, mat_adjoint(compose_right(fac))).is_identity();
    return rep;
}

} // namespace lpmf
