#pragma once

#include "lefkit/lefschetz.hpp"

namespace lefkit {

/// 0 -> U --eps--> V --eta--> W -> 0 of graded spaces with compatible L
/// actions. Exactness and L-equivariance are validated, not assumed.
struct ExactSequence {
    LefschetzModule U, V, W;
    GradedMap eps; // U -> V, shift 0
    GradedMap eta; // V -> W, shift 0
};

/// Structural checks: shapes, eps injective, eta surjective, Im(eps)=Ker(eta)
/// per degree, both maps commute with L. Throws ContractError.
void validate_exact_sequence(const ExactSequence& seq);

/// Basis of the space of degree-0 L-linear maps W -> U.
std::vector<GradedMap> hom_space(const LefschetzModule& w, const LefschetzModule& u);

/// Unique L-linear section of eta when U has center (n+1)/2 and W center n/2
/// (n = W.n, U.n = n+1). Built by lifting primitive parts through eta and
/// extending L-linearly. Throws HypothesisError on center mismatch or hard
/// Lefschetz failure of U/W.
GradedMap two_step_lift(const ExactSequence& seq);

struct LambdaSplit {
    GradedMap alpha; // W -> V, shift 0, Lambda-linear section of eta
    GradedMap beta;  // W -> U, shift +1, L-isomorphism
};

/// Unique Lambda-equivariant section for centers (n+2)/2, (n+1)/2, n/2
/// (U.n = n+2, V.n = n+1, W.n = n), together with the L-isomorphism beta
/// satisfying L·alpha = alpha·L + eps·beta.
LambdaSplit lambda_equivariant_split(const ExactSequence& seq);

/// V with an L-stable chain F2 ⊆ F1 ⊆ V; V.n = n+1 so the graded quotients
/// V/F1, F1/F2, F2 have centers n/2, (n+1)/2, (n+2)/2.
struct FilteredLefschetzModule {
    LefschetzModule V;
    std::map<int, Subspace> F1, F2;
};

/// Containment + L-stability; throws ContractError.
void validate_filtered(const FilteredLefschetzModule& f);

/// Canonical presentations of the graded pieces (echelon-pivot complements):
/// G0 = V/F1 (center n/2), G1 = F1/F2, G2 = F2. Hard Lefschetz is checked on
/// V and on each piece; HypothesisError on failure.
struct GradedPieces {
    Presented G0, G1, G2;
};
GradedPieces graded_pieces(const FilteredLefschetzModule& f);

struct ThreeStepSplitting {
    GradedMap alpha0; // G0 -> V
    GradedMap alpha1; // G1 -> V, image in F1
    GradedMap alpha2; // G2 -> V, image in F2
    GradedMap beta;   // G0 -> G2, shift +1, L-isomorphism
};

/// The unique filtered splitting with alpha1 L-linear and alpha0 L-linear
/// mod Im(alpha2), Lambda-linear mod Im(alpha1). Reduction: split off G1 by
/// two two-step liftings, then apply the Lambda-equivariant splitting to the
/// residual two-step module.
ThreeStepSplitting three_step_split(const FilteredLefschetzModule& f);

/// True iff conjugating L and Lambda by [alpha0|alpha1|alpha2] yields exactly
/// the block matrices (L on the diagonal, beta in the (G2,G0) slot;
/// Lambda on the diagonal, beta^{-1} in the (G0,G2) slot).
bool verify_block_form(const FilteredLefschetzModule& f, const ThreeStepSplitting& s);

} // namespace lefkit
