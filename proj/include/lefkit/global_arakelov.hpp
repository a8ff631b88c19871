#pragma once

#include "lefkit/local_fiber.hpp"

#include <vector>

namespace lefkit {

/// Presentations of the generic-fiber cycle groups: the full group with its
/// polarization action, its image in cohomology-classes, and the two
/// projections from the global group. chk is an extension of ak by the
/// homologically trivial part, so hard Lefschetz is never asserted on chk
/// itself (its n records the base relative dimension only).
struct GenericFiberData {
    LefschetzModule chk; // Ch of the generic fiber with the induced L
    LefschetzModule ak;  // image in cohomology classes, center n/2
    GradedMap gen_proj;  // global -> chk (shift 0)
    GradedMap cls;       // chk -> ak (shift 0)
};

/// Global model: the admissible-cycle group with its intersection pairing,
/// the 3-step filtration F2 = B (vertical classes with trivial curvature)
/// inside F1 (homologically trivial classes), the degree-+1 operator of
/// intersecting with the vertical degree-1 class, projections to the generic
/// fiber, and optional per-place fiber slices.
struct ArakelovData {
    int n = 0;
    LefschetzModule chbar; // center (n+1)/2, chbar.n = n+1
    GradedPairing pair;    // total n+1
    std::map<int, Subspace> F1, F2;
    GradedMap eps_op;      // shift +1, kills F1, image in F2, self-adjoint
    GenericFiberData K;
    std::vector<SpecialFiberData> slices;
    std::map<std::string, Cycle> cycles; // named classes of the generic fiber (coords in chk)
};

/// Structural validation: exactness of the two projections against the
/// filtration, equivariance, orthogonality of F1/F2, eps axioms.
/// Throws ContractError.
void validate_arakelov(const ArakelovData& d);

struct GlobalSplitting {
    ThreeStepSplitting S;
    Rat h_L;              // height of the generic fiber against the polarization
    RatMatrix fund;       // alpha0 of the generic fundamental class, in chbar^0
    RatMatrix eps_class;  // the vertical degree-1 class X_eps, in chbar^1
    RatMatrix c1_L0;      // (L - h_L·eps)(fund): first power of the null rescaling
};

/// Full decomposition: three-step splitting + block-form verification + the
/// height normalization beta([X_K]) = h_L·X_eps and the null rescaling
/// L0 = L - h_L·eps with L0^(n+1)(fund) = 0, all verified exactly.
GlobalSplitting decompose(const ArakelovData& d);

/// Canonical admissible lifting of a generic-fiber class z in chk^p through
/// alpha0/alpha1 after the unique L-splitting of chk; returns chbar^p
/// coordinates with gen_proj(lift) = z.
RatMatrix l_lift(const ArakelovData& d, const GlobalSplitting& s, const Cycle& z);

/// deg(z1^L · z2^L); computed through the pairing and independently as the
/// induced G1 pairing of the homologically trivial components, compared
/// exactly.
Rat l_pairing(const ArakelovData& d, const GlobalSplitting& s, const Cycle& z1, const Cycle& z2);

struct GsBbReport {
    bool gs = false;               // hard Lefschetz + Hodge positivity on chbar
    bool beilinson = false;        // same predicates on G1 with its induced pairing
    bool agree = false;            // gs == beilinson
    bool adm_standard = false;     // B' = B = B'' and the B x A pairing perfect
    bool internals_available = false;
    std::map<int, Subspace> B_prime;  // Im(eps)
    std::map<int, Subspace> B_dprime; // orthogonal complement of F1
    std::map<int, Subspace> C;        // B + Lambda B
    std::map<int, Subspace> D;        // orthogonal complement of C
    bool c_stable = false;            // C stable under L and Lambda
    bool c_standard = false;          // C hard Lefschetz (center (n+1)/2) + perfect pairing
    bool lambdaB_iso_A = false;       // projection of Lambda B to G0 bijective
    bool f1_eq_B_plus_D = false;
    bool g1_iso_D = false;
};

GsBbReport gs_beilinson_equivalence(const ArakelovData& d);

struct DivisorDecomposition {
    RatMatrix alpha0; // chbar^1 x dim G0^1, lift of the cohomology classes
    RatMatrix alpha1; // chbar^1 x dim G1^1, normalized deg(L^n·lift) = 0
    RatMatrix alpha2; // chbar^1 x dim F2^1, the given embedding
    Rat h_L;
    RatMatrix fund;
    RatMatrix c1_L0n; // L0^n(fund) in chbar^n, the normalization functional
};

/// Degree-1 decomposition characterized by the two display normalizations.
/// Precondition: the global index form (x, L^(n-1) x) is negative definite
/// on Ker(L^n | chbar^1).
DivisorDecomposition divisor_decomposition(const ArakelovData& d);

/// The unique admissible extension M^L of a divisor class (coords in chk^1),
/// with deg(c1(L0)^n · M^L) = 0 re-verified.
RatMatrix divisor_l_lift(const ArakelovData& d, const DivisorDecomposition& dd,
                         const RatMatrix& m_coords);

struct ZeroCycleDecomposition {
    int c_top_dim = 0;     // dim of the null space C^n (reported, never assumed zero)
    int bc_dim = 0;        // dim(B^n ∩ C^n), the quotiented junk
    bool c1_zero = false;  // the degree-1 null space vanishes
    bool l_injective = false;   // L^(n-1): chbar^1 -> chbar^n injective
    bool direct_sum = false;    // chbar^n = C^n ⊕ L^(n-1)·chbar^1
    DegPresentation quot;       // chbar^n -> chbar^n/(B^n ∩ C^n)
    RatMatrix alpha0, alpha1, alpha2; // lifts in quotient coordinates
};

/// Top-degree decomposition of chbar^n modulo B^n ∩ C^n; requires the local
/// splittings on every attached slice and the divisor decomposition.
ZeroCycleDecomposition zero_cycle_decomposition(const ArakelovData& d);

/// L-lift of a 0-cycle class (coords in chk^n) in quotient coordinates.
RatMatrix zero_cycle_l_lift(const ArakelovData& d, const DivisorDecomposition& dd,
                            const ZeroCycleDecomposition& zd, const RatMatrix& xi_coords);

/// Local index verification on one slice: the form (x, L^(n-1)x) on the
/// dimension-n cycle classes has no positive direction and its kernel is
/// exactly the fiber-class line.
bool local_index_check(const SpecialFiberData& slice);
bool local_index_check(const SpecialFiberData& slice, const RatMatrix& fiber_class);

} // namespace lefkit
