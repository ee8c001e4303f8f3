#include "lpmf/laurent.hpp"

namespace lpmf {

LaurentPoly LaurentPoly::constant(const FieldScalar& c) {
    return monomial(c, 0);
}

LaurentPoly LaurentPoly::monomial(const FieldScalar& c, int e) {
    LaurentPoly p(c.field());
    if (!c.is_zero()) p.terms_.emplace(e, c);
    return p;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

FieldScalar LaurentPoly::coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? FieldScalar::zero(field_) : it->second;
}

void LaurentPoly::set_coeff(int e, const FieldScalar& c) {
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

int LaurentPoly::min_exp() const {
    if (terms_.empty()) throw Error(Errc::zero_input, "min_exp of zero polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_exp() const {
    if (terms_.empty()) throw Error(Errc::zero_input, "max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

FieldScalar LaurentPoly::eval_one() const {
    FieldScalar s = FieldScalar::zero(field_);
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

LaurentPoly LaurentPoly::adjoint() const {
    LaurentPoly p(field_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(-e, c.conj());
    return p;
}

LaurentPoly LaurentPoly::negate() const {
    LaurentPoly p(field_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, c.negate());
    return p;
}

LaurentPoly LaurentPoly::shifted(int shift) const {
    LaurentPoly p(field_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(e + shift, c);
    return p;
}

void LaurentPoly::require_same_field(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.field_ != b.field_)
        throw Error(Errc::field_mismatch,
                    std::string(field_name(a.field_)) + " vs " + field_name(b.field_));
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p = a;
    p += b;
    return p;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p = a;
    p -= b;
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& b) {
    require_same_field(*this, b);
    for (const auto& [e, c] : b.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& b) {
    require_same_field(*this, b);
    for (const auto& [e, c] : b.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c.negate());
        } else {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

void LaurentPoly::add_mul(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_field(*this, a);
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            auto [it, inserted] = terms_.try_emplace(ea + eb, field_);
            it->second.add_mul(ca, cb);
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
}

void LaurentPoly::add_scaled(const LaurentPoly& a, const FieldScalar& c) {
    add_scaled_shifted(a, c, 0);
}

void LaurentPoly::add_scaled_shifted(const LaurentPoly& a, const FieldScalar& c, int shift) {
    require_same_field(*this, a);
    if (c.is_zero() || a.is_zero()) return;
    for (const auto& [e, coef] : a.terms_) {
        auto [it, inserted] = terms_.try_emplace(e + shift, field_);
        it->second.add_mul(coef, c);
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void LaurentPoly::sub_mul(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_field(*this, a);
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            auto [it, inserted] = terms_.try_emplace(ea + eb, field_);
            it->second.add_mul(ca.negate(), cb);
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p(a.field_);
    p.add_mul(a, b);
    return p;
}

LaurentPoly LaurentPoly::operator*(const FieldScalar& c) const {
    if (c.is_zero()) return LaurentPoly(field_);
    LaurentPoly p(field_);
    for (const auto& [e, coef] : terms_) {
        FieldScalar prod = coef * c;
        if (!prod.is_zero()) p.terms_.emplace(e, std::move(prod));
    }
    return p;
}

std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& num, const LaurentPoly& den) {
    if (num.field() != den.field())
        throw Error(Errc::field_mismatch, "poly_divmod operands");
    if (den.is_zero()) throw Error(Errc::division_by_zero, "poly_divmod by zero");
    if (!num.is_poly_in_t() || !den.is_poly_in_t())
        throw Error(Errc::not_polynomial, "poly_divmod requires polynomials in t = z^-1");

    LaurentPoly q(num.field());
    LaurentPoly r = num;
    const int dd = den.degree();
    const FieldScalar lead_inv = den.coeff(dd).inverse();
    while (!r.is_zero() && r.degree() >= dd) {
        const int e = r.degree();
        FieldScalar c = r.coeff(e) * lead_inv;
        LaurentPoly term = LaurentPoly::monomial(c, e - dd);
        q += term;
        r.sub_mul(term, den);
    }
    return {q, r};
}

EuclidTrace euclid_trace(const LaurentPoly& a, const LaurentPoly& c) {
    if (a.is_zero() || c.is_zero())
        throw Error(Errc::zero_input, "euclid_trace requires nonzero inputs");
    if (!a.is_poly_in_t() || !c.is_poly_in_t())
        throw Error(Errc::not_polynomial, "euclid_trace requires polynomials in t");
    if (a.degree() > c.degree())
        throw Error(Errc::degree_order, "euclid_trace requires deg(a) <= deg(c)");

    EuclidTrace tr;
    tr.gcd_like = a;
    LaurentPoly num = c;
    LaurentPoly den = a;
    while (true) {
        auto [q, r] = poly_divmod(num, den);
        tr.quotients.push_back(q);
        if (r.is_zero()) {
            tr.gcd_like = den;
            break;
        }
        tr.remainders.push_back(r);
        num = den;
        den = r;
    }
    return tr;
}

} // namespace lpmf
