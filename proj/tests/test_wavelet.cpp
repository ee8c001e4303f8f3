#include <doctest.h>

#include "lpmf/pseudoidentity.hpp"
#include "lpmf/wavelet.hpp"
#include "test_util.hpp"

using namespace lpmf;
using namespace lpmf::test;

namespace {

// some exact rational unit vectors (scaled Pythagorean tuples)
std::vector<std::vector<FieldScalar>> unit_vector_pool_q() {
    return {
        {q(1), q(0)},       {q(0), q(-1)},      {q(3, 5), q(4, 5)},
        {q(-3, 5), q(4, 5)}, {q(5, 13), q(12, 13)}, {q(8, 17), q(-15, 17)},
        {q(7, 25), q(24, 25)},
    };
}

std::vector<std::vector<FieldScalar>> unit_vector_pool_qi() {
    return {
        {qi(3, 5, 4, 5), qi(0, 1, 0, 1)},     // |3/5 + 4/5 i| = 1
        {qi(3, 13, 4, 13), qi(12, 13, 0, 1)}, // 25/169 + 144/169 = 1
        {qi(0, 1, 1, 1), qi(0, 1, 0, 1)},     // (i, 0)
    };
}

// direct block-entry summation, the definitional form of the row-sum rule
bool linear_condition_by_blocks(const LPMatrix& a) {
    const int m = a.rank();
    BlockForm bf = to_block_form(a);
    for (int i = 0; i < m; ++i) {
        FieldScalar sum = FieldScalar::zero(a.field());
        for (const auto& blk : bf.blocks)
            for (int j = 0; j < m; ++j) sum += blk.at(i, j);
        FieldScalar want = i == 0 ? FieldScalar::from_int(m, a.field())
                                  : FieldScalar::zero(a.field());
        if (sum != want) return false;
    }
    return true;
}

WaveletFactorizationBundle trivial_bundle(Field f = Field::rational) {
    WaveletFactorizationBundle b;
    b.k0 = 0;
    b.nil_factors = NilFactorization{2, f, {}};
    b.G = ConstMatrix::identity(1, f);
    b.H = haar_matrix(2, f);
    return b;
}

} // namespace

TEST_SUITE_BEGIN("wavelet");

TEST_CASE("rank-2 Haar pair is biorthogonal") {
    ConstMatrix h = haar_matrix(2, Field::rational);
    CHECK(h == CM(2, {1, 1, 1, -1}));
    LPMatrix hm = LPMatrix::from_const(h);
    WaveletCheckReport rep = check_biorthogonal(hm, hm);
    CHECK(rep.valid());
    CHECK(rep.genus == 1);
}

TEST_CASE("identity pair fails the linear condition") {
    LPMatrix id = LPMatrix::identity(2, Field::rational);
    WaveletCheckReport rep = check_biorthogonal(id, id);
    CHECK_FALSE(rep.valid());
    CHECK(rep.quadratic_ok == false); // I * I~ = I != 2I
    CHECK_FALSE(rep.linear_l_ok);
    CHECK_THROWS_AS(require_biorthogonal(id, id), Error);
}

TEST_CASE("composed bundles validate") {
    WaveletFactorizationBundle b = trivial_bundle();
    b.nil_factors.factors.push_back(make_primitive_factor(counterexample_nilpotent(), 1));
    b.nil_factors.factors.push_back(make_primitive_factor(counterexample_nilpotent(), 2));
    CompositionReport rep = compose_biorthogonal(b);
    CHECK(check_biorthogonal(rep.pair.L, rep.pair.R).valid());
}

TEST_CASE("paraunitary primitives") {
    // v = (1, 0): V(z) = diag(z^-1, 1)
    LPMatrix v = paraunitary_matrix(make_paraunitary({q(1), q(0)}));
    LPMatrix expect(2, Field::rational);
    expect.at(0, 0) = P({{1, 1}});
    expect.at(1, 1) = P({{0, 1}});
    CHECK(v == expect);

    CHECK_THROWS_WITH_AS(make_paraunitary({q(1), q(1)}), doctest::Contains("NOT_UNIT_VECTOR"),
                         Error);
}

TEST_CASE("V(z) V~(z) = I for exact unit vectors") {
    for (const auto& vec : unit_vector_pool_q()) {
        LPMatrix v = paraunitary_matrix(make_paraunitary(vec));
        CHECK(mat_mul(v, mat_adjoint(v)).is_identity());
    }
    for (const auto& vec : unit_vector_pool_qi()) {
        LPMatrix v = paraunitary_matrix(make_paraunitary(vec));
        CHECK(mat_mul(v, mat_adjoint(v)).is_identity());
    }
}

TEST_CASE("det V(z) = z^-1 exactly") {
    for (const auto& vec : unit_vector_pool_q()) {
        auto [b, unit] = monomial_det_exponent(paraunitary_matrix(make_paraunitary(vec)));
        CHECK(b == 1);
        CHECK(unit.is_one());
    }
}

TEST_CASE("Haar validation") {
    CHECK_THROWS_WITH_AS(haar_matrix(3, Field::rational), doctest::Contains("HAAR_UNDEFINED"),
                         Error);
    CHECK_THROWS_WITH_AS(haar_matrix(2, Field::rational, CM(2, {1, 1, 2, -2})),
                         doctest::Contains("HAAR_INVALID"), Error);
    CHECK_THROWS_WITH_AS(haar_matrix(2, Field::rational, CM(2, {1, -1, 1, 1})),
                         doctest::Contains("HAAR_INVALID"), Error); // first row not all ones
    // a valid user-supplied Haar is accepted verbatim
    CHECK(haar_matrix(2, Field::rational, CM(2, {1, 1, 1, -1})) == CM(2, {1, 1, 1, -1}));
    // user-supplied rank-4 (scaled Hadamard) passes H H* = 4I with ones row
    ConstMatrix h4 = CM(4, {1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1});
    CHECK(haar_matrix(4, Field::rational, h4) == h4);
}

TEST_CASE("trivial bundle composes to the Haar pair") {
    CompositionReport rep = compose_biorthogonal(trivial_bundle());
    LPMatrix hm = LPMatrix::from_const(haar_matrix(2, Field::rational));
    CHECK(rep.pair.L == hm);
    CHECK(rep.pair.R == hm);
    CHECK(rep.pair.genus == 1);
    CHECK(rep.b == 0);
    CHECK(rep.d == 0);
    CHECK(rep.det_exponent_consistent);
}

TEST_CASE("bundle with the counterexample factors composes to a valid pair") {
    WaveletFactorizationBundle b = trivial_bundle();
    b.nil_factors.factors.push_back(make_primitive_factor(counterexample_nilpotent(), 1));
    b.nil_factors.factors.push_back(make_primitive_factor(counterexample_nilpotent(), 2));
    CompositionReport rep = compose_biorthogonal(b);
    CHECK(rep.pair.rank == 2);
    CHECK(rep.det_exponent_consistent);
    CHECK(rep.genus_ok);
}

TEST_CASE("one paraunitary factor contributes b = 1") {
    WaveletFactorizationBundle b = trivial_bundle();
    b.paraunitary.push_back(make_paraunitary({q(3, 5), q(4, 5)}));
    CompositionReport rep = compose_biorthogonal(b);
    CHECK(rep.d == 1);
    CHECK(rep.b == 1);
    CHECK(rep.k0 == 0);
    CHECK(rep.det_exponent_consistent); // d = b - m k0
    CHECK(check_biorthogonal(rep.pair.L, rep.pair.R).valid());
}

TEST_CASE("nonzero k0 shifts the determinant exponent") {
    WaveletFactorizationBundle b = trivial_bundle();
    b.k0 = 1;
    b.paraunitary.push_back(make_paraunitary({q(5, 13), q(12, 13)}));
    CompositionReport rep = compose_biorthogonal(b);
    CHECK(rep.d == 1);
    CHECK(rep.b == 3); // b = d + m k0 = 1 + 2
    CHECK(rep.det_exponent_consistent);
    CHECK(check_biorthogonal(rep.pair.L, rep.pair.R).valid());
}

TEST_CASE("nontrivial G still satisfies both conditions") {
    WaveletFactorizationBundle b = trivial_bundle();
    ConstMatrix g(1, Field::rational);
    g.at(0, 0) = q(-7, 3);
    b.G = g;
    b.nil_factors.factors.push_back(make_primitive_factor(counterexample_nilpotent(), 2));
    CompositionReport rep = compose_biorthogonal(b);
    CHECK(check_biorthogonal(rep.pair.L, rep.pair.R).valid());
}

TEST_CASE("theorem instance verification round-trips") {
    WaveletFactorizationBundle b = trivial_bundle();
    b.paraunitary.push_back(make_paraunitary({q(3, 5), q(4, 5)}));
    b.nil_factors.factors.push_back(make_primitive_factor(counterexample_nilpotent(), 1));
    CompositionReport comp = compose_biorthogonal(b);
    TheoremInstanceReport rep = verify_theorem_instance(comp.pair.L, comp.pair.R, b);
    CHECK(rep.all_ok());
}

TEST_CASE("mismatched G fails both comparisons") {
    WaveletFactorizationBundle b = trivial_bundle();
    b.nil_factors.factors.push_back(make_primitive_factor(counterexample_nilpotent(), 1));
    CompositionReport comp = compose_biorthogonal(b);
    WaveletFactorizationBundle wrong = b;
    ConstMatrix g(1, Field::rational);
    g.at(0, 0) = q(2);
    wrong.G = g;
    TheoremInstanceReport rep = verify_theorem_instance(comp.pair.L, comp.pair.R, wrong);
    CHECK_FALSE(rep.l_matches);
    CHECK_FALSE(rep.r_matches);
    CHECK(rep.pair_valid);
}

TEST_CASE("genus side condition is flagged against a smaller pair") {
    // bundle whose pseudoidentity component has genus 6 vs the Haar pair
    WaveletFactorizationBundle b = trivial_bundle();
    b.nil_factors.factors.push_back(make_primitive_factor(counterexample_nilpotent(), 5));
    LPMatrix hm = LPMatrix::from_const(haar_matrix(2, Field::rational));
    TheoremInstanceReport rep = verify_theorem_instance(hm, hm, b);
    CHECK(rep.nil_genus == 6);
    CHECK(rep.genus == 1);
    CHECK_FALSE(rep.genus_ok);
    CHECK_FALSE(rep.all_ok());
}

TEST_CASE("linear condition equivalence: evaluation route vs block sums") {
    Rng rng(83);
    for (int n = 0; n < 200; ++n) {
        LPMatrix a(2, Field::rational);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) a.at(i, j) = rand_poly(rng, 3, 4, Field::rational, -2);
        if (a.is_zero()) continue;
        LPMatrix l = a;
        WaveletCheckReport rep = check_biorthogonal(l, l);
        CHECK(rep.linear_l_ok == linear_condition_by_blocks(l));
    }
    // and on a known-good pair
    CompositionReport comp = compose_biorthogonal(trivial_bundle());
    CHECK(linear_condition_by_blocks(comp.pair.L));
}

TEST_CASE("(1 + G) H with G = 1 leaves the Haar pair unchanged") {
    WaveletFactorizationBundle b = trivial_bundle();
    CompositionReport rep = compose_biorthogonal(b);
    CHECK(rep.pair.L == LPMatrix::from_const(b.H));
}

TEST_SUITE_END();
