#include <doctest.h>

#include "lpmf/factorization.hpp"
#include "lpmf/pseudoidentity.hpp"
#include "test_util.hpp"

using namespace lpmf;
using namespace lpmf::test;

namespace {

// independent replay of recorded operations, straight from the definitions
LPMatrix replay_ops(const LPMatrix& c, const DiagonalizeResult& d) {
    LPMatrix w = c;
    for (const auto& op : d.left_ops)
        for (int col = 0; col < w.rank(); ++col) w.at(op.i, col) += op.f * w.at(op.j, col);
    for (const auto& op : d.right_ops)
        for (int row = 0; row < w.rank(); ++row) w.at(row, op.j) += op.f * w.at(row, op.i);
    return w;
}

LPMatrix elementary_matrix(const ElementaryFactor& ef, int rank, Field f) {
    LPMatrix e = LPMatrix::identity(rank, f);
    e.at(ef.i, ef.j) += ef.f;
    return e;
}

LPMatrix compose_mixed(const std::vector<MixedFactor>& mixed, const ConstMatrix& tail) {
    LPMatrix acc = LPMatrix::identity(tail.rank(), tail.field());
    for (const auto& item : mixed) {
        if (std::holds_alternative<PrimitiveFactor>(item))
            acc = acc * left_factor_matrix(std::get<PrimitiveFactor>(item));
        else
            acc = acc * LPMatrix::from_const(std::get<ConstMatrix>(item));
    }
    return acc * LPMatrix::from_const(tail);
}

} // namespace

TEST_SUITE_BEGIN("factorization");

TEST_CASE("primitive factor construction enforces the invariants") {
    CHECK_THROWS_AS(make_primitive_factor(CM(2, {0, 1, 0, 0}), 0), Error);
    CHECK_THROWS_AS(make_primitive_factor(CM(2, {0, 0, 0, 0}), 1), Error);
    CHECK_THROWS_AS(make_primitive_factor(CM(2, {1, 0, 0, 1}), 1), Error);
    PrimitiveFactor f = make_primitive_factor(counterexample_nilpotent(), 2);
    CHECK(f.k == 2);
}

TEST_CASE("compose_left of the printed two-factor list is the counterexample C") {
    NilFactorization fac{2, Field::rational,
                         {make_primitive_factor(counterexample_nilpotent(), 1),
                          make_primitive_factor(counterexample_nilpotent(), 2)}};
    CHECK(compose_left(fac) == counterexample_C());
    CHECK(compose_right(fac) == counterexample_D());
}

TEST_CASE("compose of the empty factor list is the identity") {
    NilFactorization fac{3, Field::rational, {}};
    CHECK(compose_left(fac) == LPMatrix::identity(3, Field::rational));
    CHECK(compose_right(fac) == LPMatrix::identity(3, Field::rational));
}

TEST_CASE("left and right compositions telescope to a pseudoidentity pair") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        PseudoidentityPair pair = random_pair(2 + static_cast<int>(seed % 3), 4, 4, seed);
        CHECK(mat_mul(pair.C, mat_adjoint(pair.D)).is_identity());
    }
}

TEST_CASE("split of a single-term polynomial") {
    // f = 2t - 2: one primitive (N = 2 E_ij, k = 1), no tail
    SplitResult sr = split_elementary(0, 1, P({{0, -2}, {1, 2}}), 2);
    REQUIRE(sr.primitives.size() == 1);
    CHECK(sr.primitives[0].k == 1);
    CHECK(sr.primitives[0].N == CM(2, {0, 2, 0, 0}));
    CHECK_FALSE(sr.constant_tail.has_value());
}

TEST_CASE("split of a dense polynomial keeps one primitive per t-term") {
    // f = 3t^3 + 2t^2 + t + 5: b_0 = f(1) = 11
    LaurentPoly f = P({{0, 5}, {1, 1}, {2, 2}, {3, 3}});
    SplitResult sr = split_elementary(1, 0, f, 2);
    REQUIRE(sr.primitives.size() == 3);
    CHECK(sr.primitives[0].k == 3); // descending shift order
    CHECK(sr.primitives[1].k == 2);
    CHECK(sr.primitives[2].k == 1);
    REQUIRE(sr.constant_tail.has_value());
    CHECK(sr.constant_tail->at(1, 0) == q(11));

    // product oracle: multiply everything back
    std::vector<MixedFactor> mixed;
    for (const auto& p : sr.primitives) mixed.emplace_back(p);
    LPMatrix prod = compose_mixed(mixed, *sr.constant_tail);
    LPMatrix expect = LPMatrix::identity(2, Field::rational);
    expect.at(1, 0) = f;
    CHECK(prod == expect);
}

TEST_CASE("split of the worked pivot polynomial has an identity tail") {
    // f = -t^2 - t + 2: f(1) = 0, primitives with N = -E_ij at k = 1, 2
    LaurentPoly f = P({{0, 2}, {1, -1}, {2, -1}});
    SplitResult sr = split_elementary(0, 2, f, 3);
    REQUIRE(sr.primitives.size() == 2);
    CHECK(sr.primitives[0].k == 2);
    CHECK(sr.primitives[0].N.at(0, 2) == q(-1));
    CHECK(sr.primitives[1].k == 1);
    CHECK(sr.primitives[1].N.at(0, 2) == q(-1));
    CHECK_FALSE(sr.constant_tail.has_value());

    std::vector<MixedFactor> mixed;
    for (const auto& p : sr.primitives) mixed.emplace_back(p);
    LPMatrix prod = compose_mixed(mixed, ConstMatrix::identity(3, Field::rational));
    LPMatrix expect = LPMatrix::identity(3, Field::rational);
    expect.at(0, 2) = f;
    CHECK(prod == expect);
}

TEST_CASE("split of zero is empty") {
    SplitResult sr = split_elementary(0, 1, LaurentPoly::zero(Field::rational), 2);
    CHECK(sr.primitives.empty());
    CHECK_FALSE(sr.constant_tail.has_value());
}

TEST_CASE("split factors over one E_ij commute") {
    LaurentPoly f = P({{1, 2}, {3, -1}, {4, 5}});
    SplitResult sr = split_elementary(0, 1, f, 2);
    REQUIRE(sr.primitives.size() == 3);
    LPMatrix fwd = LPMatrix::identity(2, Field::rational);
    LPMatrix bwd = LPMatrix::identity(2, Field::rational);
    for (const auto& p : sr.primitives) fwd = fwd * left_factor_matrix(p);
    for (auto it = sr.primitives.rbegin(); it != sr.primitives.rend(); ++it)
        bwd = bwd * left_factor_matrix(*it);
    CHECK(fwd == bwd);
}

TEST_CASE("diagonalize the identity") {
    DiagonalizeResult d = diagonalize_type1(LPMatrix::identity(3, Field::rational));
    CHECK(d.left_ops.empty());
    CHECK(d.right_ops.empty());
    CHECK(d.diag.is_identity());
}

TEST_CASE("diagonalize the worked 3x3 input") {
    LPMatrix c = worked_3x3_C();
    DiagonalizeResult d = diagonalize_type1(c);
    LPMatrix reduced = replay_ops(c, d);
    CHECK(reduced == LPMatrix::from_const(d.diag));
    CHECK(d.diag.is_diagonal());
    CHECK(d.diag.det().is_one());
}

TEST_CASE("diagonalize random pseudoidentity inputs, replay oracle") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        PseudoidentityPair pair = random_pair(2 + static_cast<int>(seed % 3), 3, 3, seed);
        DiagonalizeResult d = diagonalize_type1(pair.C);
        CHECK(replay_ops(pair.C, d) == LPMatrix::from_const(d.diag));
        CHECK(d.diag.det().is_one());
    }
}

TEST_CASE("diagonalize rejects bad inputs") {
    LPMatrix neg = LPMatrix::identity(2, Field::rational);
    neg.at(0, 1) = P({{-1, 1}});
    CHECK_THROWS_WITH_AS(diagonalize_type1(neg), doctest::Contains("SUPPORT_VIOLATION"), Error);

    LPMatrix notuni = LPMatrix::identity(2, Field::rational);
    notuni.at(0, 0) = P({{1, 1}});
    CHECK_THROWS_WITH_AS(diagonalize_type1(notuni), doctest::Contains("NOT_UNIMODULAR"), Error);
}

TEST_CASE("left factors: a single recorded left op inverts") {
    DiagonalizeResult d;
    d.diag = ConstMatrix::identity(2, Field::rational);
    LaurentPoly f = P({{0, -1}, {2, 3}});
    d.left_ops.push_back({OpSide::left_row, 0, 1, f});
    LeftFactorization lf = ops_to_left_factors(d);
    REQUIRE(lf.factors.size() == 1);
    CHECK(lf.factors[0].i == 0);
    CHECK(lf.factors[0].j == 1);
    CHECK(lf.factors[0].f == f.negate());
}

TEST_CASE("left factors: a right op conjugates through the diagonal") {
    // hand expansion: diag (I + f E_ij)^{-1} diag^{-1} = I - f (d_i/d_j) E_ij
    ConstMatrix diag(2, Field::rational);
    diag.at(0, 0) = q(3);
    diag.at(1, 1) = q(1, 3);
    DiagonalizeResult d;
    d.diag = diag;
    LaurentPoly f = P({{1, 2}});
    d.right_ops.push_back({OpSide::right_col, 0, 1, f});
    LeftFactorization lf = ops_to_left_factors(d);
    REQUIRE(lf.factors.size() == 1);
    CHECK(lf.factors[0].f == f.negate() * q(9)); // d_0 / d_1 = 9

    // oracle: direct matrix multiplication
    LPMatrix op = LPMatrix::identity(2, Field::rational);
    op.at(0, 1) = f;
    LPMatrix dm = LPMatrix::from_const(diag);
    LPMatrix dm_inv(2, Field::rational);
    dm_inv.at(0, 0) = P({{0, 1}}) * q(1, 3);
    dm_inv.at(1, 1) = P({{0, 3}});
    LPMatrix conj = dm * mat_inverse_unimodular(op) * dm_inv;
    CHECK(conj == elementary_matrix(lf.factors[0], 2, Field::rational));
}

TEST_CASE("left factors reconstruct the source exactly") {
    for (std::uint64_t seed = 31; seed <= 45; ++seed) {
        PseudoidentityPair pair = random_pair(2 + static_cast<int>(seed % 3), 3, 3, seed);
        DiagonalizeResult d = diagonalize_type1(pair.C);
        LeftFactorization lf = ops_to_left_factors(d);
        LPMatrix acc = LPMatrix::identity(pair.C.rank(), Field::rational);
        for (const auto& ef : lf.factors)
            acc = acc * elementary_matrix(ef, pair.C.rank(), Field::rational);
        ConstMatrix full(pair.C.rank(), Field::rational);
        for (int i = 0; i < pair.C.rank(); ++i) full.at(i, i) = lf.diag.at(i, i);
        CHECK(acc * LPMatrix::from_const(full) == pair.C);
    }
}

TEST_CASE("conjugate sweep moves constants right") {
    ConstMatrix n = counterexample_nilpotent();
    ConstMatrix id = ConstMatrix::identity(2, Field::rational);

    // [(N,1), G] with G = I sweeps to [(N,1)]
    NilFactorization out = conjugate_sweep({make_primitive_factor(n, 1), id}, id);
    REQUIRE(out.factors.size() == 1);
    CHECK(out.factors[0].N == n);
    CHECK(out.factors[0].k == 1);

    // G L_N G^{-1} stays primitive with the same shift
    ConstMatrix g = CM(2, {1, 2, 0, 1});
    std::vector<MixedFactor> mixed{g, make_primitive_factor(n, 3)};
    NilFactorization swept = conjugate_sweep(mixed, g.inverse());
    REQUIRE(swept.factors.size() == 1);
    CHECK(swept.factors[0].k == 3);
    CHECK(swept.factors[0].N == g * n * g.inverse());
    CHECK(swept.factors[0].N.squares_to_zero());
    CHECK(compose_mixed(mixed, g.inverse()) == compose_left(swept));
}

TEST_CASE("conjugate sweep flags a non-identity residue") {
    ConstMatrix g = CM(2, {1, 2, 0, 1});
    CHECK_THROWS_WITH_AS(conjugate_sweep({g}, ConstMatrix::identity(2, Field::rational)),
                         doctest::Contains("RESIDUAL_CONSTANT_NOT_IDENTITY"), Error);
}

TEST_CASE("factorize the counterexample C") {
    LPMatrix c = counterexample_C();
    NilFactorization fac = factorize_nilpotent(c);
    FactorizationReport rep = verify_factorization(c, fac);
    CHECK(rep.all_ok());
    CHECK(rep.degree_bound_ok);
}

TEST_CASE("factorize the identity to an empty list") {
    NilFactorization fac = factorize_nilpotent(LPMatrix::identity(3, Field::rational));
    CHECK(fac.factors.empty());
}

TEST_CASE("factorize the worked 3x3 input; printed factors also compose to it") {
    LPMatrix c = worked_3x3_C();
    NilFactorization fac = factorize_nilpotent(c);
    CHECK(verify_factorization(c, fac).all_ok());

    NilFactorization printed{3, Field::rational,
                             {make_primitive_factor(worked_3x3_N1(), 1),
                              make_primitive_factor(worked_3x3_N1(), 2),
                              make_primitive_factor(worked_3x3_N2(), 1),
                              make_primitive_factor(worked_3x3_N2(), 2)}};
    CHECK(compose_left(printed) == c);
    CHECK(verify_factorization(c, printed).all_ok());
}

TEST_CASE("factorize_nilpotent round-trips on random pairs of each rank") {
    for (int rank : {2, 3, 4}) {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            PseudoidentityPair pair = random_pair(rank, 4, 4, seed * 100 + rank);
            NilFactorization fac = factorize_nilpotent(pair.C);
            FactorizationReport rep = verify_factorization(pair.C, fac);
            CHECK(rep.all_ok());
            CHECK(rep.degree_bound_ok);
            CHECK(compose_right(fac) == pair.D);
        }
    }
}

TEST_CASE("rank-2 Euclidean strategy on the counterexample C") {
    LPMatrix c = counterexample_C();
    NilFactorization fac = factorize_rank2_euclid(c);
    CHECK(verify_factorization(c, fac).all_ok());
    // the Euclidean walk ends on the same nilpotent as the printed list
    for (const auto& pf : fac.factors) CHECK(pf.N == counterexample_nilpotent());
}

TEST_CASE("rank-2 strategy: c = 0 with b = t - 1") {
    LPMatrix c = LPMatrix::identity(2, Field::rational);
    c.at(0, 1) = P({{0, -1}, {1, 1}});
    NilFactorization fac = factorize_rank2_euclid(c);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].k == 1);
    CHECK(fac.factors[0].N == CM(2, {0, 1, 0, 0}));
    CHECK(verify_factorization(c, fac).all_ok());
}

TEST_CASE("rank-2 strategy: b = 0 branch and the identity") {
    LPMatrix c = LPMatrix::identity(2, Field::rational);
    c.at(1, 0) = P({{0, -3}, {2, 3}});
    NilFactorization fac = factorize_rank2_euclid(c);
    CHECK(verify_factorization(c, fac).all_ok());

    CHECK(factorize_rank2_euclid(LPMatrix::identity(2, Field::rational)).factors.empty());
}

TEST_CASE("rank-2 strategy rejects other ranks") {
    CHECK_THROWS_WITH_AS(factorize_rank2_euclid(LPMatrix::identity(3, Field::rational)),
                         doctest::Contains("RANK_NOT_TWO"), Error);
}

TEST_CASE("both strategies verify on random rank-2 pairs") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        PseudoidentityPair pair = random_pair(2, 4, 4, seed * 7);
        NilFactorization general = factorize_nilpotent(pair.C);
        NilFactorization euclid = factorize_rank2_euclid(pair.C);
        CHECK(verify_factorization(pair.C, general).all_ok());
        CHECK(verify_factorization(pair.C, euclid).all_ok());
        // both compose to C even when the factor lists differ
        CHECK(compose_left(general) == pair.C);
        CHECK(compose_left(euclid) == pair.C);
    }
}

TEST_CASE("mirrored orientation when deg(a) > deg(c)") {
    // transpose-like swap of the counterexample puts the higher degree on a
    ConstMatrix n = counterexample_nilpotent().conj_transpose();
    REQUIRE(n.squares_to_zero());
    NilFactorization src{2, Field::rational,
                         {make_primitive_factor(n, 1), make_primitive_factor(n, 2)}};
    LPMatrix c = compose_left(src);
    NilFactorization fac = factorize_rank2_euclid(c);
    CHECK(verify_factorization(c, fac).all_ok());
}

TEST_CASE("lattice form of a single elementary") {
    // C = I + (2 z^-1 - 2) E_12: one stage (0, 1, a=2, k=1), diag = I
    LPMatrix c = LPMatrix::identity(2, Field::rational);
    c.at(0, 1) = P({{0, -2}, {1, 2}});
    LatticeForm lf = lattice_form(c);
    REQUIRE(lf.stages.size() == 1);
    CHECK(lf.stages[0].i == 0);
    CHECK(lf.stages[0].j == 1);
    CHECK(lf.stages[0].a == q(2));
    CHECK(lf.stages[0].k == 1);
    CHECK(lf.diag.is_identity());
    CHECK(lattice_replay(lf) == c);
}

TEST_CASE("lattice form of the counterexample C replays exactly") {
    LPMatrix c = counterexample_C();
    LatticeForm lf = lattice_form(c);
    CHECK(lattice_replay(lf) == c);
    CHECK(lattice_constant_subproduct(lf).is_identity());
    CHECK(lf.diag.det().is_one());
}

TEST_CASE("lattice form on random pairs") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        PseudoidentityPair pair = random_pair(2 + static_cast<int>(seed % 2), 3, 3, seed * 13);
        LatticeForm lf = lattice_form(pair.C);
        CHECK(lattice_replay(lf) == pair.C);
        CHECK(lattice_constant_subproduct(lf).is_identity());
        for (const auto& s : lf.stages) {
            CHECK(s.k >= 0);
            CHECK_FALSE(s.a.is_zero());
        }
    }
}

TEST_CASE("verify_factorization reports the degree accounting") {
    LPMatrix c = counterexample_C();
    NilFactorization printed{2, Field::rational,
                             {make_primitive_factor(counterexample_nilpotent(), 1),
                              make_primitive_factor(counterexample_nilpotent(), 2)}};
    FactorizationReport rep = verify_factorization(c, printed);
    CHECK(rep.all_ok());
    CHECK(rep.sum_k == 3);
    CHECK(rep.deg_t == 2);
    CHECK(rep.genus == 3);
    CHECK(rep.degree_bound_ok);
    CHECK(rep.sum_k != rep.deg_t); // the degrees do not add up
}

TEST_CASE("verify_factorization flags factors of a different matrix") {
    NilFactorization other{2, Field::rational,
                           {make_primitive_factor(CM(2, {0, 1, 0, 0}), 1)}};
    FactorizationReport rep = verify_factorization(counterexample_C(), other);
    CHECK_FALSE(rep.compose_left_ok);
    CHECK_FALSE(rep.all_ok());
}

TEST_CASE("factorization round-trips over Q(i)") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        PseudoidentityPair pair = random_pair(2, 3, 3, seed * 19, Field::gaussian_rational);
        NilFactorization fac = factorize_nilpotent(pair.C);
        FactorizationReport rep = verify_factorization(pair.C, fac);
        CHECK(rep.all_ok());
        CHECK(compose_right(fac) == pair.D);
        NilFactorization euclid = factorize_rank2_euclid(pair.C);
        CHECK(verify_factorization(pair.C, euclid).all_ok());
        LatticeForm lf = lattice_form(pair.C);
        CHECK(lattice_replay(lf) == pair.C);
        CHECK(lattice_constant_subproduct(lf).is_identity());
    }
}

TEST_CASE("conjugation preserves shifts") {
    for (std::uint64_t seed = 50; seed <= 60; ++seed) {
        PseudoidentityPair pair = random_pair(3, 3, 5, seed);
        NilFactorization fac = factorize_nilpotent(pair.C);
        for (const auto& pf : fac.factors) {
            CHECK(pf.k >= 1);
            CHECK(pf.N.squares_to_zero());
            CHECK_FALSE(pf.N.is_zero());
        }
    }
}

TEST_SUITE_END();
