#ifndef LPMF_FACTORIZATION_HPP
#define LPMF_FACTORIZATION_HPP

#include <optional>
#include <variant>
#include <vector>

#include "lpmf/matrix.hpp"

namespace lpmf {

/// One nilpotent primitive factor L_N(z) = I - N + N z^{-k} with N^2 = 0,
/// N != 0, k >= 1. Its synthesis partner is R_N(z) = I + N* - N* z^{k}.
struct PrimitiveFactor {
    ConstMatrix N;
    int k = 1;
};

/// Validates the PrimitiveFactor invariants (N nonzero, N^2 = 0, k >= 1).
PrimitiveFactor make_primitive_factor(ConstMatrix N, int k);

LPMatrix left_factor_matrix(const PrimitiveFactor& f);  // L_N(z)
LPMatrix right_factor_matrix(const PrimitiveFactor& f); // R_N(z)

/// Ordered factor list in product order: factors[0] is the LEFTMOST factor,
/// so the composition is L_{factors[0]} * L_{factors[1]} * ...; the file
/// format carries the same convention in its order_note.
struct NilFactorization {
    int rank = 0;
    Field field = Field::rational;
    std::vector<PrimitiveFactor> factors;
};

LPMatrix compose_left(const NilFactorization& f);
LPMatrix compose_right(const NilFactorization& f);

enum class OpSide { left_row, right_col };

/// A recorded type-I elementary operation I + f(t) E_ij (i != j, 0-based):
/// applied as row_i += f * row_j (left) or col_j += f * col_i (right).
struct ElementaryOpRecord {
    OpSide side = OpSide::left_row;
    int i = 0;
    int j = 0;
    LaurentPoly f;
};

struct DiagonalizeResult {
    std::vector<ElementaryOpRecord> left_ops;  // in application order
    std::vector<ElementaryOpRecord> right_ops; // in application order
    ConstMatrix diag;                          // constant diagonal, det = 1
};

/// Reduce a det-1 polynomial-in-t matrix to a constant diagonal using only
/// type-I row/column operations (swaps synthesized from three type-I ops,
/// signs absorbed into the diagonal). Pivots: minimal t-degree, ties
/// row-major.
DiagonalizeResult diagonalize_type1(const LPMatrix& C);

/// Factor I + f(t) E_ij in product order (leftmost first).
struct ElementaryFactor {
    int i = 0;
    int j = 0;
    LaurentPoly f;
};

struct LeftFactorization {
    std::vector<ElementaryFactor> factors; // product order
    ConstMatrix diag;
};

/// Rewrites the recorded reduction as C = E_1(t) ... E_{u+s}(t) diag:
/// left ops invert (f -> -f); right ops invert and conjugate through the
/// diagonal (f -> -f d_i / d_j), which preserves the elementary form.
LeftFactorization ops_to_left_factors(const DiagonalizeResult& d);

struct SplitResult {
    std::vector<PrimitiveFactor> primitives;     // descending shift order
    std::optional<ConstMatrix> constant_tail;    // I + f(1) E_ij, absent when f(1) = 0
};

/// Split I + f(t) E_ij into commuting primitives (N = a_k E_ij at shift k
/// for each nonzero coefficient a_k, k >= 1) times the constant tail
/// I + f(1) E_ij. f = 0 yields an empty list and no tail.
SplitResult split_elementary(int i, int j, const LaurentPoly& f, int rank);

using MixedFactor = std::variant<PrimitiveFactor, ConstMatrix>;

/// Push every constant in `mixed` to the right through the primitives via
/// Q L_N = L_{Q N Q^{-1}} Q, then verify that the accumulated constant
/// times `tail` is the identity (throws RESIDUAL_CONSTANT_NOT_IDENTITY).
NilFactorization conjugate_sweep(const std::vector<MixedFactor>& mixed, const ConstMatrix& tail);

/// Full pipeline of the nilpotent factorization theorem:
/// diagonalize -> left factors -> split -> sweep. Requires det(C) = 1,
/// C(1) = I and support only in z^{-k}, k >= 0.
NilFactorization factorize_nilpotent(const LPMatrix& C);

/// Rank-2 specialization driven by the Euclidean algorithm on the first
/// column (mirrored orientation when deg(a) > deg(c)).
NilFactorization factorize_rank2_euclid(const LPMatrix& C);

/// One lattice stage I_m + (delta_{k,0} - 1) a E_ij + a E_ij z^{-k}:
/// a plain constant elementary I + a E_ij when k = 0, a sparse nilpotent
/// primitive when k >= 1.
struct LatticeStage {
    int i = 0;
    int j = 0;
    FieldScalar a;
    int k = 0;
};

/// Stages in product order (stages[0] leftmost); replaying all stages and
/// then diag reproduces C, and the subproduct of the k = 0 stages (in the
/// same order) times diag is the identity.
struct LatticeForm {
    int rank = 0;
    Field field = Field::rational;
    std::vector<LatticeStage> stages;
    ConstMatrix diag;
};

LatticeForm lattice_form(const LPMatrix& C);

LPMatrix lattice_stage_matrix(const LatticeStage& s, int rank, Field f);
LPMatrix lattice_replay(const LatticeForm& lf);
/// Product of the k = 0 stages (in stored order) times diag.
LPMatrix lattice_constant_subproduct(const LatticeForm& lf);

/// Mechanized sufficiency check: factor invariants, compose_left == C,
/// compose_right == derived partner D, plus the degree/genus accounting.
struct FactorizationReport {
    bool factors_valid = false;
    bool compose_left_ok = false;
    bool compose_right_ok = false;
    long long sum_k = 0;
    long long deg_t = 0;
    long long genus = 0;
    bool degree_bound_ok = false;     // sum_k >= deg_t (provable bound)
    bool genus_sum_reading = false;   // sum_k >= genus (reported, not asserted)

    bool all_ok() const { return factors_valid && compose_left_ok && compose_right_ok; }
};

FactorizationReport verify_factorization(const LPMatrix& C, const NilFactorization& fac);

} // namespace lpmf

#endif
