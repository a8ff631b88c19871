#pragma once

#include "lefkit/splitting.hpp"

namespace lefkit {

/// Graded bilinear pairing V^i x V^(total-i) -> Q; block(i) has shape
/// dim(i) x dim(total-i). Symmetry means block(i) = block(total-i)^T.
struct GradedPairing {
    int total = 0;
    std::map<int, RatMatrix> blocks;
};

RatMatrix pairing_block(const GradedPairing& p, const GradedSpace& v, int d);
void set_pairing_block(GradedPairing& p, int d, const RatMatrix& m);
void validate_pairing(const GradedPairing& p, const GradedSpace& v, const std::string& name);

bool pairing_symmetric(const GradedPairing& p, const GradedSpace& v);
bool pairing_nondegenerate(const GradedPairing& p, const GradedSpace& v);

/// Adjointness <f x, y> = <x, f y> of a degree-+1 operator against p.
/// Throws ContractError on shape mismatch.
bool check_adjoint(const GradedPairing& p, const GradedMap& f, const GradedSpace& v);

struct HodgeReport {
    /// signature of (-1)^i <., L^(n-2i) .> on the primitive part of V^i,
    /// recorded for each support degree i <= n/2 with a nonzero primitive part
    std::map<int, Signature> primitive_signatures;
    bool verdict = true;
};

/// Exact Hodge index verification: verdict is true iff every primitive
/// signature is positive definite. Requires P.total == M.n, adjointness, and
/// hard Lefschetz (HypothesisError otherwise).
HodgeReport hodge_index_check(const LefschetzModule& m, const GradedPairing& p);

/// The pairings induced on the graded pieces of a filtered module whose F2
/// and F1 are orthogonal complements of each other:
///   p02 : G0^d x G2^(n+1-d)   (lift-independent),
///   p11 : G1 (total n+1),
///   p00 : G0 (total n),   (x,y)_00 = (x, beta y)_02,
///   p22 : G2 (total n+2), (z,z')_22 = (beta^{-1} z, z')_20.
/// The relation chain (x,y)_00 = (x,by)_02 = (bx,y)_20 = (bx,by)_22 is
/// verified exactly. Throws HypothesisError when orthogonality fails.
struct InducedPairings {
    std::map<int, RatMatrix> p02; // keyed by G0-degree d
    GradedPairing p00, p11, p22;
};
InducedPairings induced_graded_pairings(const FilteredLefschetzModule& f, const GradedPairing& p,
                                        const ThreeStepSplitting& s);

/// True iff the Gram form pulled back through [alpha0|alpha1|alpha2] is
/// exactly block-anti-diagonal: ((x,y,z),(x',y',z')) = (x,z')_02 + (y,y')_11
/// + (z,x')_20. Preconditions (P symmetric, L-adjoint, non-degenerate, F2
/// isotropic with F1 = F2-perp) raise HypothesisError.
bool block_form_check(const FilteredLefschetzModule& f, const GradedPairing& p,
                      const ThreeStepSplitting& s);

struct HodgeEquivalenceReport {
    bool v_side = false;
    bool g_side = false;
    bool agree = false;
};

/// Evaluates the Hodge index verdict on (V, P) and independently on
/// (G1, p11) and (G0, p00); reports whether the two routes agree.
HodgeEquivalenceReport hodge_equivalence_check(const FilteredLefschetzModule& f,
                                               const GradedPairing& p,
                                               const ThreeStepSplitting& s);

/// Smallest non-negative integer c such that (a) L + c·eps keeps V a
/// Lefschetz module with center (n+1)/2 and (b) (-1)^i (.,.)_00(c) is
/// positive definite on the primitive parts of G0, where
/// (x,y)_00(c) = (x,y)_00 + c (x, eps_bar y)_02. The bad set is bounded by
/// exact root bounds of interpolated determinant/minor polynomials, then
/// integers are scanned upward. Requires eps to kill F1, map into F2, and be
/// self-adjoint; requires the p02 pairing perfect. Self-verifying: re-checks
/// the output on the twisted instance from scratch.
Rat find_polarization_twist(const FilteredLefschetzModule& f, const GradedPairing& p,
                            const ThreeStepSplitting& s, const GradedMap& eps_op);

} // namespace lefkit
