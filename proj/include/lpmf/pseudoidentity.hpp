#ifndef LPMF_PSEUDOIDENTITY_HPP
#define LPMF_PSEUDOIDENTITY_HPP

#include <cstdint>
#include <vector>

#include "lpmf/matrix.hpp"

namespace lpmf {

/// A validated pair (C, D) with C supported in z^{-k}, 0 <= k <= k_c,
/// D supported in z^{-k}, k_d <= k <= 0, C(z) D~(z) = I and C(1) = D(1) = I.
struct PseudoidentityPair {
    LPMatrix C;
    LPMatrix D;
    int k_c = 0;
    int k_d = 0;
};

/// Per-condition result of checking a candidate pair. `valid()` is the
/// conjunction; the CLI prints each flag so a failing pair is explained.
struct PairCheckReport {
    int rank = 0;
    bool support_c_ok = false;
    bool support_d_ok = false;
    bool product_ok = false;
    bool eval_one_c_ok = false;
    bool eval_one_d_ok = false;
    bool det_c_ok = false;
    bool det_d_ok = false;
    int k_c = 0; // meaningful when support_c_ok
    int k_d = 0; // meaningful when support_d_ok
    bool degenerate = false; // constant pair (k_c = k_d = 0)

    bool valid() const {
        return support_c_ok && support_d_ok && product_ok && eval_one_c_ok &&
               eval_one_d_ok && det_c_ok && det_d_ok;
    }
};

/// Never throws on definitional failures; throws RANK_MISMATCH /
/// FIELD_MISMATCH on structurally incomparable inputs.
PairCheckReport check_pseudoidentity(const LPMatrix& C, const LPMatrix& D);

/// Throwing variant: returns the validated pair or raises the first failed
/// condition (SUPPORT_VIOLATION, PRODUCT_NOT_IDENTITY, EVAL_ONE_NOT_IDENTITY,
/// NOT_UNIMODULAR).
PseudoidentityPair require_pseudoidentity(const LPMatrix& C, const LPMatrix& D);

/// D is the adjoint of the inverse of C. Requires det(C) = 1, C(1) = I and
/// support only in k >= 0.
PseudoidentityPair derive_partner(const LPMatrix& C);

/// Closed-form rank-2 family built from nonzero coefficients a_1..a_k at
/// strictly increasing positive shifts m_1 < ... < m_k; every nonconstant
/// coefficient block of C is a multiple of [[1,-1],[1,-1]] and squares to
/// zero, which makes the subleading blocks singular for k >= 2.
PseudoidentityPair example_pair(const std::vector<FieldScalar>& a, const std::vector<int>& m);

/// Probe of the invertible-block conjecture for rank-2 pairs, plus the
/// weaker solvability condition -C_{k_c - p} N + C_{k_c} = 0 over nilpotent N.
struct ConjectureProbeReport {
    int p = 0;
    ConstMatrix c_block; // C_{k_c - p}
    ConstMatrix d_block; // D_{k_d + p} (zero matrix when absent)
    bool c_block_invertible = false;
    bool d_block_invertible = false;
    bool conjecture_holds = false;
    bool weaker_linear_solvable = false;   // ignoring the nilpotency constraint
    bool weaker_condition_solvable = false; // with some N, N^2 = 0
};

ConjectureProbeReport probe_conjecture(const PseudoidentityPair& pair);

/// Deterministic-from-seed product of random primitive factors
/// N = G (a E_ij) G^{-1} with integer unimodular G; always a valid pair.
PseudoidentityPair random_pair(int rank, int num_factors, int max_shift,
                               std::uint64_t seed, Field field = Field::rational);

} // namespace lpmf

#endif
