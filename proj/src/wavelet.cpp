#include "lpmf/wavelet.hpp"

namespace lpmf {

namespace {

// row sums of the m x mg block presentation equal L(1) * (1, ..., 1)^T
bool linear_condition(const LPMatrix& a) {
    const int m = a.rank();
    ConstMatrix at_one = mat_eval_one(a);
    for (int i = 0; i < m; ++i) {
        FieldScalar sum = FieldScalar::zero(a.field());
        for (int j = 0; j < m; ++j) sum += at_one.at(i, j);
        const FieldScalar want =
            i == 0 ? FieldScalar::from_int(m, a.field()) : FieldScalar::zero(a.field());
        if (sum != want) return false;
    }
    return true;
}

LPMatrix scaled_identity(int rank, Field f, const FieldScalar& c) {
    LPMatrix r(rank, f);
    for (int i = 0; i < rank; ++i) r.at(i, i) = LaurentPoly::constant(c);
    return r;
}

} // namespace

WaveletCheckReport check_biorthogonal(const LPMatrix& L, const LPMatrix& R) {
    if (L.rank() != R.rank()) throw Error(Errc::rank_mismatch, "pair ranks differ");
    if (L.field() != R.field()) throw Error(Errc::field_mismatch, "pair fields differ");

    WaveletCheckReport rep;
    rep.rank = L.rank();
    const FieldScalar m_scalar = FieldScalar::from_int(L.rank(), L.field());
    rep.quadratic_ok =
        mat_mul(L, mat_adjoint(R)) == scaled_identity(L.rank(), L.field(), m_scalar);
    rep.linear_l_ok = linear_condition(L);
    rep.linear_r_ok = linear_condition(R);
    rep.genus_l = L.is_zero() ? 0 : genus(L);
    rep.genus_r = R.is_zero() ? 0 : genus(R);
    rep.genus = std::max(rep.genus_l, rep.genus_r);
    return rep;
}

WaveletPair require_biorthogonal(const LPMatrix& L, const LPMatrix& R) {
    WaveletCheckReport rep = check_biorthogonal(L, R);
    if (!rep.quadratic_ok)
        throw Error(Errc::quadratic_violation, "L(z) R~(z) != m I");
    if (!rep.linear_l_ok || !rep.linear_r_ok)
        throw Error(Errc::linear_violation, "block row sums are not (m, 0, ..., 0)");
    return WaveletPair{L, R, rep.rank, rep.genus};
}

ParaunitaryPrimitive make_paraunitary(std::vector<FieldScalar> v) {
    if (v.empty()) throw Error(Errc::not_unit_vector, "empty vector");
    FieldScalar norm = FieldScalar::zero(v.front().field());
    for (const auto& c : v) {
        if (c.field() != v.front().field())
            throw Error(Errc::field_mismatch, "mixed vector entry fields");
        norm += c.conj() * c;
    }
    if (!norm.is_one())
        throw Error(Errc::not_unit_vector, "v* v = " + scalar_format(norm) + " != 1");
    return ParaunitaryPrimitive{std::move(v)};
}

LPMatrix paraunitary_matrix(const ParaunitaryPrimitive& p) {
    const int m = static_cast<int>(p.v.size());
    const Field f = p.v.front().field();
    LPMatrix r = LPMatrix::identity(m, f);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            FieldScalar vv = p.v[i] * p.v[j].conj(); // (v v*)_{ij}
            if (vv.is_zero()) continue;
            LaurentPoly& e = r.at(i, j);
            e.set_coeff(0, e.coeff(0) - vv);
            e.set_coeff(1, e.coeff(1) + vv);
        }
    return r;
}

ConstMatrix haar_matrix(int rank, Field field, const std::optional<ConstMatrix>& user_supplied) {
    if (user_supplied) {
        const ConstMatrix& h = *user_supplied;
        if (h.rank() != rank) throw Error(Errc::haar_invalid, "Haar rank differs");
        if (h.field() != field) throw Error(Errc::field_mismatch, "Haar field differs");
        ConstMatrix prod = h * h.conj_transpose();
        ConstMatrix want = ConstMatrix::identity(rank, field) * FieldScalar::from_int(rank, field);
        if (prod != want) throw Error(Errc::haar_invalid, "H H* != m I");
        for (int j = 0; j < rank; ++j)
            if (!h.at(0, j).is_one())
                throw Error(Errc::haar_invalid, "first row of H must be all ones");
        return h;
    }
    if (rank != 2)
        throw Error(Errc::haar_undefined,
                    "no built-in Haar matrix for rank " + std::to_string(rank) +
                        "; supply one explicitly");
    ConstMatrix h(2, field);
    h.at(0, 0) = FieldScalar::one(field);
    h.at(0, 1) = FieldScalar::one(field);
    h.at(1, 0) = FieldScalar::one(field);
    h.at(1, 1) = FieldScalar::from_int(-1, field);
    return h;
}

namespace {

LPMatrix one_plus_block(const ConstMatrix& g, int rank) {
    // [[1, 0], [0, G]]
    const Field f = g.field();
    LPMatrix r = LPMatrix::identity(rank, f);
    for (int i = 0; i < g.rank(); ++i)
        for (int j = 0; j < g.rank(); ++j)
            r.at(i + 1, j + 1) = LaurentPoly::constant(g.at(i, j));
    return r;
}

} // namespace

namespace {

CompositionReport compose_impl(const WaveletFactorizationBundle& bundle) {
    const int m = bundle.H.rank();
    const Field f = bundle.H.field();
    if (bundle.G.rank() != m - 1) throw Error(Errc::rank_mismatch, "G must have rank m - 1");
    if (bundle.G.det().is_zero()) throw Error(Errc::bad_params, "G must be invertible");
    if (bundle.nil_factors.rank != m || bundle.nil_factors.field != f)
        throw Error(Errc::rank_mismatch, "nilpotent factors incompatible with H");

    LPMatrix v_chain = LPMatrix::identity(m, f);
    for (const auto& p : bundle.paraunitary) {
        if (static_cast<int>(p.v.size()) != m)
            throw Error(Errc::rank_mismatch, "paraunitary vector length differs from rank");
        v_chain = v_chain * paraunitary_matrix(p);
    }

    LPMatrix haar = LPMatrix::from_const(bundle.H);
    LPMatrix left_tail = one_plus_block(bundle.G, m) * haar;
    LPMatrix right_tail = one_plus_block(bundle.G.inverse().conj_transpose(), m) * haar;

    LPMatrix L = (v_chain * compose_left(bundle.nil_factors) * left_tail).shifted(bundle.k0);
    LPMatrix R = (v_chain * compose_right(bundle.nil_factors) * right_tail).shifted(bundle.k0);

    CompositionReport rep;
    rep.k0 = bundle.k0;
    rep.d = static_cast<int>(bundle.paraunitary.size());
    auto [b, unit] = monomial_det_exponent(L);
    (void)unit;
    rep.b = b;
    rep.det_exponent_consistent = rep.d == rep.b - m * bundle.k0;
    rep.nil_genus =
        bundle.nil_factors.factors.empty() ? 1 : genus(compose_left(bundle.nil_factors));
    rep.pair = require_biorthogonal(L, R);
    rep.genus_ok = rep.nil_genus <= rep.pair.genus;
    return rep;
}

} // namespace

CompositionReport compose_biorthogonal(const WaveletFactorizationBundle& bundle) {
    CompositionReport rep = compose_impl(bundle);
    if (!rep.genus_ok)
        throw Error(Errc::genus_violation,
                    "pseudoidentity component has genus above the composed pair");
    return rep;
}

TheoremInstanceReport verify_theorem_instance(const LPMatrix& L, const LPMatrix& R,
                                              const WaveletFactorizationBundle& bundle) {
    TheoremInstanceReport rep;
    CompositionReport comp = compose_impl(bundle);
    rep.l_matches = comp.pair.L == L;
    rep.r_matches = comp.pair.R == R;
    WaveletCheckReport check = check_biorthogonal(L, R);
    rep.pair_valid = check.valid();
    rep.genus = check.genus;
    rep.nil_genus = comp.nil_genus;
    rep.genus_ok = rep.nil_genus <= rep.genus;
    return rep;
}

} // namespace lpmf
