#ifndef LPMF_WAVELET_HPP
#define LPMF_WAVELET_HPP

#include <optional>

#include "lpmf/factorization.hpp"

namespace lpmf {

/// Analysis/synthesis pair satisfying the quadratic condition
/// L(z) R~(z) = m I and the linear (zeroth-order vanishing moment)
/// condition: block row sums equal (m, 0, ..., 0) for both matrices.
struct WaveletPair {
    LPMatrix L;
    LPMatrix R;
    int rank = 0;
    int genus = 0;
};

struct WaveletCheckReport {
    int rank = 0;
    bool quadratic_ok = false;
    bool linear_l_ok = false;
    bool linear_r_ok = false;
    int genus_l = 0;
    int genus_r = 0;
    int genus = 0; // max of the two tight genera

    bool valid() const { return quadratic_ok && linear_l_ok && linear_r_ok; }
};

WaveletCheckReport check_biorthogonal(const LPMatrix& L, const LPMatrix& R);
WaveletPair require_biorthogonal(const LPMatrix& L, const LPMatrix& R);

/// Unit column vector v (v* v = 1) generating V(z) = I - v v* + v v* z^{-1}.
struct ParaunitaryPrimitive {
    std::vector<FieldScalar> v;
};

ParaunitaryPrimitive make_paraunitary(std::vector<FieldScalar> v); // throws NOT_UNIT_VECTOR
LPMatrix paraunitary_matrix(const ParaunitaryPrimitive& p);

/// Rank-2 canonical Haar matrix [[1,1],[1,-1]], or a user-supplied H
/// validated by H H* = m I with an all-ones first row.
ConstMatrix haar_matrix(int rank, Field field,
                        const std::optional<ConstMatrix>& user_supplied = std::nullopt);

/// The data of the wavelet factorization theorem:
///   L(z) = z^{-k0} V_1 ... V_d  L_{N_r} ... L_{N_1} (1 + G) H
///   R(z) = z^{-k0} V_1 ... V_d  R_{N_r} ... R_{N_1} (1 + (G^{-1})*) H
/// where (1 + G) denotes the block-diagonal [[1, 0], [0, G]].
struct WaveletFactorizationBundle {
    int k0 = 0;
    std::vector<ParaunitaryPrimitive> paraunitary;
    NilFactorization nil_factors;
    ConstMatrix G; // invertible (m-1) x (m-1)
    ConstMatrix H; // rank-m Haar matrix
};

struct CompositionReport {
    WaveletPair pair;
    int b = 0;  // exponent of det L(z)
    int d = 0;  // number of paraunitary factors
    int k0 = 0;
    bool det_exponent_consistent = false; // d = b - m k0
    int nil_genus = 0;                    // genus of compose_left(nil_factors)
    bool genus_ok = false;                // nil_genus <= genus of the pair
};

/// Builds (L, R) exactly per the two displays; throws GENUS_VIOLATION when
/// the pseudoidentity component has genus above the composed pair's.
CompositionReport compose_biorthogonal(const WaveletFactorizationBundle& bundle);

struct TheoremInstanceReport {
    bool l_matches = false;
    bool r_matches = false;
    bool pair_valid = false;
    bool genus_ok = false;
    int nil_genus = 0;
    int genus = 0;

    bool all_ok() const { return l_matches && r_matches && pair_valid && genus_ok; }
};

/// Verification direction only: recomposes the bundle and compares with
/// (L, R) exactly; paraunitary extraction from a raw pair is out of scope.
TheoremInstanceReport verify_theorem_instance(const LPMatrix& L, const LPMatrix& R,
                                              const WaveletFactorizationBundle& bundle);

} // namespace lpmf

#endif
