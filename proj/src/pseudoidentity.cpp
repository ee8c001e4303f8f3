#include "lpmf/pseudoidentity.hpp"

#include <array>

#include "lpmf/factorization.hpp"

namespace lpmf {

namespace {

bool support_in(const LPMatrix& a, bool nonnegative) {
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) {
            const LaurentPoly& p = a.at(i, j);
            if (p.is_zero()) continue;
            if (nonnegative ? p.min_exp() < 0 : p.max_exp() > 0) return false;
        }
    return true;
}

bool det_is_one(const LPMatrix& a) {
    LaurentPoly det = mat_det(a);
    return det.is_constant() && !det.is_zero() && det.coeff(0).is_one();
}

} // namespace

PairCheckReport check_pseudoidentity(const LPMatrix& C, const LPMatrix& D) {
    if (C.rank() != D.rank()) throw Error(Errc::rank_mismatch, "pair ranks differ");
    if (C.field() != D.field()) throw Error(Errc::field_mismatch, "pair fields differ");

    PairCheckReport rep;
    rep.rank = C.rank();
    rep.support_c_ok = !C.is_zero() && support_in(C, true);
    rep.support_d_ok = !D.is_zero() && support_in(D, false);
    rep.product_ok = mat_mul(C, mat_adjoint(D)).is_identity();
    rep.eval_one_c_ok = mat_eval_one(C).is_identity();
    rep.eval_one_d_ok = mat_eval_one(D).is_identity();
    rep.det_c_ok = det_is_one(C);
    rep.det_d_ok = det_is_one(D);
    if (rep.support_c_ok) rep.k_c = C.degree();
    if (rep.support_d_ok) rep.k_d = D.is_zero() ? 0 : to_block_form(D).k0;
    rep.degenerate = rep.valid() && rep.k_c == 0 && rep.k_d == 0;
    return rep;
}

PseudoidentityPair require_pseudoidentity(const LPMatrix& C, const LPMatrix& D) {
    PairCheckReport rep = check_pseudoidentity(C, D);
    if (!rep.support_c_ok)
        throw Error(Errc::support_violation, "C has terms with positive powers of z");
    if (!rep.support_d_ok)
        throw Error(Errc::support_violation, "D has terms with negative powers of z");
    if (!rep.product_ok)
        throw Error(Errc::product_not_identity, "C(z) D~(z) != I");
    if (!rep.eval_one_c_ok || !rep.eval_one_d_ok)
        throw Error(Errc::eval_one_not_identity, "C(1) or D(1) != I");
    if (!rep.det_c_ok || !rep.det_d_ok)
        throw Error(Errc::not_unimodular, "det != 1");
    return PseudoidentityPair{C, D, rep.k_c, rep.k_d};
}

PseudoidentityPair derive_partner(const LPMatrix& C) {
    if (!support_in(C, true))
        throw Error(Errc::support_violation, "C has terms with positive powers of z");
    if (!mat_eval_one(C).is_identity())
        throw Error(Errc::eval_one_not_identity, "C(1) != I");
    LPMatrix D = mat_adjoint(mat_inverse_unimodular(C)); // throws NOT_UNIMODULAR
    return require_pseudoidentity(C, D);
}

PseudoidentityPair example_pair(const std::vector<FieldScalar>& a, const std::vector<int>& m) {
    if (a.empty() || m.empty()) throw Error(Errc::empty_sequence, "need k >= 1 coefficients");
    if (a.size() != m.size())
        throw Error(Errc::bad_params, "coefficient and shift lists differ in length");
    int prev = 0;
    for (int mi : m) {
        if (mi <= prev) throw Error(Errc::nonincreasing_exponents, "need 0 < m_1 < ... < m_k");
        prev = mi;
    }
    const Field f = a.front().field();
    FieldScalar a0 = FieldScalar::zero(f);
    for (const auto& ai : a) {
        if (ai.is_zero()) throw Error(Errc::zero_coefficient, "coefficients must be nonzero");
        if (ai.field() != f) throw Error(Errc::field_mismatch, "mixed coefficient fields");
        a0 += ai;
    }
    const FieldScalar one = FieldScalar::one(f);

    // C(z) = [[1-a0, a0], [-a0, 1+a0]] + sum_i a_i [[1,-1],[1,-1]] z^{-m_i}
    LPMatrix C(2, f);
    C.at(0, 0).set_coeff(0, one - a0);
    C.at(0, 1).set_coeff(0, a0);
    C.at(1, 0).set_coeff(0, a0.negate());
    C.at(1, 1).set_coeff(0, one + a0);
    for (size_t idx = 0; idx < a.size(); ++idx) {
        const FieldScalar& ai = a[idx];
        const int e = m[idx];
        C.at(0, 0).set_coeff(e, C.at(0, 0).coeff(e) + ai);
        C.at(0, 1).set_coeff(e, C.at(0, 1).coeff(e) - ai);
        C.at(1, 0).set_coeff(e, C.at(1, 0).coeff(e) + ai);
        C.at(1, 1).set_coeff(e, C.at(1, 1).coeff(e) - ai);
    }

    // D(z) = [[1+ab0, ab0], [-ab0, 1-ab0]] + sum_i ab_i [[-1,-1],[1,1]] z^{m_i}
    FieldScalar ab0 = a0.conj();
    LPMatrix D(2, f);
    D.at(0, 0).set_coeff(0, one + ab0);
    D.at(0, 1).set_coeff(0, ab0);
    D.at(1, 0).set_coeff(0, ab0.negate());
    D.at(1, 1).set_coeff(0, one - ab0);
    for (size_t idx = 0; idx < a.size(); ++idx) {
        const FieldScalar abi = a[idx].conj();
        const int e = -m[idx]; // z^{+m_i}
        D.at(0, 0).set_coeff(e, D.at(0, 0).coeff(e) - abi);
        D.at(0, 1).set_coeff(e, D.at(0, 1).coeff(e) - abi);
        D.at(1, 0).set_coeff(e, D.at(1, 0).coeff(e) + abi);
        D.at(1, 1).set_coeff(e, D.at(1, 1).coeff(e) + abi);
    }

    return require_pseudoidentity(C, D);
}

namespace {

// 2x2 N with N^2 = 0  <=>  tr(N) = 0 and det(N) = 0.
// Decides whether M X = B admits a solution X with X^2 = 0, exactly.
bool nilpotent_solution_exists(const ConstMatrix& M, const ConstMatrix& B, bool& linear_solvable) {
    const Field f = M.field();
    const FieldScalar detM = M.det();
    if (!detM.is_zero()) {
        linear_solvable = true;
        ConstMatrix N = M.inverse() * B;
        return N.squares_to_zero();
    }
    if (M.is_zero()) {
        linear_solvable = B.is_zero();
        // any nilpotent N works once the linear system is trivial
        return linear_solvable;
    }
    // rank(M) = 1: columns of B must be multiples of the column space of M.
    // Column space is spanned by a nonzero column of M (or the image of any
    // basis vector); kernel is spanned by ker = (m01, -m00) or (m11, -m10).
    std::array<FieldScalar, 2> col{FieldScalar::zero(f), FieldScalar::zero(f)};
    if (!M.at(0, 0).is_zero() || !M.at(1, 0).is_zero()) {
        col = {M.at(0, 0), M.at(1, 0)};
    } else {
        col = {M.at(0, 1), M.at(1, 1)};
    }
    std::array<FieldScalar, 2> ker{FieldScalar::zero(f), FieldScalar::zero(f)};
    if (!M.at(0, 0).is_zero() || !M.at(0, 1).is_zero()) {
        ker = {M.at(0, 1), M.at(0, 0).negate()};
    } else {
        ker = {M.at(1, 1), M.at(1, 0).negate()};
    }

    // particular solution column by column: M x = b, x = s * v where M v = col
    // find v with M v = col: try unit vectors scaled
    auto solve_column = [&](const FieldScalar& b0, const FieldScalar& b1,
                            FieldScalar& x0, FieldScalar& x1) -> bool {
        // b must be proportional to col: b = s col
        FieldScalar s(f);
        if (!col[0].is_zero())
            s = b0 / col[0];
        else
            s = b1 / col[1];
        if (!(col[0] * s == b0 && col[1] * s == b1)) return false;
        // choose x with M x = s col; a preimage of col under M: e_j where
        // column j of M equals col, scaled appropriately
        if (!M.at(0, 0).is_zero() || !M.at(1, 0).is_zero()) {
            x0 = s;
            x1 = FieldScalar::zero(f);
        } else {
            x0 = FieldScalar::zero(f);
            x1 = s;
        }
        return true;
    };

    ConstMatrix N0(2, f);
    FieldScalar x0(f), x1(f);
    if (!solve_column(B.at(0, 0), B.at(1, 0), x0, x1)) {
        linear_solvable = false;
        return false;
    }
    N0.at(0, 0) = x0;
    N0.at(1, 0) = x1;
    if (!solve_column(B.at(0, 1), B.at(1, 1), x0, x1)) {
        linear_solvable = false;
        return false;
    }
    N0.at(0, 1) = x0;
    N0.at(1, 1) = x1;
    linear_solvable = true;

    // General solution N = N0 + ker * (t1, t2). Both constraints are affine
    // in (t1, t2): trace is linear, and det(N0 + ker t^T) has no quadratic
    // term because the update has rank one.
    //   tr:  tr(N0) + t1 ker0 + t2 ker1 = 0
    //   det: det(N0) + t1 det([ker | n_2]) + t2 det([n_1 | ker]) = 0
    auto det2 = [&](const FieldScalar& p, const FieldScalar& q, const FieldScalar& r,
                    const FieldScalar& s) { return p * s - q * r; };
    FieldScalar tr_c = N0.at(0, 0) + N0.at(1, 1);
    FieldScalar tr_t1 = ker[0];
    FieldScalar tr_t2 = ker[1];
    FieldScalar det_c = det2(N0.at(0, 0), N0.at(0, 1), N0.at(1, 0), N0.at(1, 1));
    FieldScalar det_t1 = det2(ker[0], N0.at(0, 1), ker[1], N0.at(1, 1));
    FieldScalar det_t2 = det2(N0.at(0, 0), ker[0], N0.at(1, 0), ker[1]);

    // solve the 2x2 affine system [tr_t1 tr_t2; det_t1 det_t2] t = -(tr_c, det_c)
    FieldScalar disc = tr_t1 * det_t2 - tr_t2 * det_t1;
    if (!disc.is_zero()) return true; // unique t exists
    // singular system: solvable iff the two equations are consistent on a line
    // handle degenerate rows directly
    auto row_consistent_exists = [&](const FieldScalar& u1, const FieldScalar& u2,
                                     const FieldScalar& rhs, bool& trivial) {
        trivial = u1.is_zero() && u2.is_zero();
        return !trivial || rhs.is_zero();
    };
    bool triv1 = false, triv2 = false;
    bool ok1 = row_consistent_exists(tr_t1, tr_t2, tr_c.negate(), triv1);
    bool ok2 = row_consistent_exists(det_t1, det_t2, det_c.negate(), triv2);
    if (!ok1 || !ok2) return false;
    if (triv1 && triv2) return true;
    if (triv1) return true;  // only the det row constrains t, a line of solutions
    if (triv2) return true;  // only the trace row constrains t
    // both rows nonzero and proportional (disc = 0): consistent iff the
    // right-hand sides are proportional by the same factor
    if (!tr_t1.is_zero())
        return det_c * tr_t1 == tr_c * det_t1;
    return det_c * tr_t2 == tr_c * det_t2;
}

} // namespace

ConjectureProbeReport probe_conjecture(const PseudoidentityPair& pair) {
    if (pair.C.rank() != 2) throw Error(Errc::rank_not_two, "probe is defined for rank 2");
    if (pair.k_c < 1) throw Error(Errc::constant_c, "probe undefined for constant C");

    ConjectureProbeReport rep;
    const int k_c = pair.k_c;
    int p = 0;
    for (int cand = 1; cand <= k_c; ++cand) {
        if (!coefficient_block(pair.C, k_c - cand).is_zero()) {
            p = cand;
            break;
        }
    }
    if (p == 0)
        throw Error(Errc::constant_c, "no nonzero block below C_{k_c}");
    rep.p = p;
    rep.c_block = coefficient_block(pair.C, k_c - p);
    rep.d_block = coefficient_block(pair.D, pair.k_d + p);
    rep.c_block_invertible = rep.c_block.is_invertible();
    rep.d_block_invertible = rep.d_block.is_invertible();
    rep.conjecture_holds = rep.c_block_invertible && rep.d_block_invertible;

    // weaker condition: -C_{k_c - p} N + C_{k_c} = 0 for some N with N^2 = 0
    rep.weaker_condition_solvable = nilpotent_solution_exists(
        rep.c_block, coefficient_block(pair.C, k_c), rep.weaker_linear_solvable);
    return rep;
}

namespace {

/// Minimal deterministic generator: splitmix64 stream. The standard library
/// distributions are implementation-defined, so seeds would not be portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    int range(int lo, int hi) { // inclusive
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

} // namespace

PseudoidentityPair random_pair(int rank, int num_factors, int max_shift,
                               std::uint64_t seed, Field field) {
    if (rank < 2 || num_factors < 0 || max_shift < 1)
        throw Error(Errc::bad_params, "need rank >= 2, num_factors >= 0, max_shift >= 1");
    Rng rng(seed);

    NilFactorization fac;
    fac.rank = rank;
    fac.field = field;
    for (int n = 0; n < num_factors; ++n) {
        // nonzero scalar a
        FieldScalar a(field);
        do {
            mpq_class re(rng.range(-3, 3), rng.range(1, 3));
            re.canonicalize();
            if (field == Field::rational) {
                a = FieldScalar::from_mpq(re);
            } else {
                mpq_class im(rng.range(-3, 3), rng.range(1, 3));
                im.canonicalize();
                a = FieldScalar::gaussian(re, im);
            }
        } while (a.is_zero());

        int i = rng.range(0, rank - 1);
        int j = rng.range(0, rank - 2);
        if (j >= i) ++j;

        // integer unimodular G as a short product of elementary matrices
        ConstMatrix g = ConstMatrix::identity(rank, field);
        const int steps = rng.range(2, 4);
        for (int s = 0; s < steps; ++s) {
            int u = rng.range(0, rank - 1);
            int v = rng.range(0, rank - 2);
            if (v >= u) ++v;
            int c = 0;
            while (c == 0) c = rng.range(-2, 2);
            ConstMatrix e = ConstMatrix::identity(rank, field);
            e.at(u, v) = FieldScalar::from_int(c, field);
            g = g * e;
        }
        ConstMatrix nil = g * ConstMatrix::unit_scaled(rank, i, j, a) * g.inverse();
        fac.factors.push_back(make_primitive_factor(std::move(nil), rng.range(1, max_shift)));
    }

    return require_pseudoidentity(compose_left(fac), compose_right(fac));
}

} // namespace lpmf
