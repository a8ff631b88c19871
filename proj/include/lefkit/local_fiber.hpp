#pragma once

#include "lefkit/pairing.hpp"

#include <string>

namespace lefkit {

/// Cycle data attached to a degenerate fiber. A_high is graded by
/// codimension p, A_low by dimension d; the connection map realizes
/// i^*i_* : A_(n+1-p) -> A^p, so its blocks are keyed by p against the
/// cograded view of A_low. The two pairings are the evaluation pairing
/// A^p x A_p -> Q and the cap form <x, y> = (x, y cap [fiber]) on A^* (total
/// n), which descends to the nearby quotient; lift-independence of that
/// descent (vanishing against the image of the connection on both sides) is
/// a constructor invariant.
struct SpecialFiberData {
    int n = 0;
    GradedSpace A_high;                // codimension-graded
    GradedSpace A_low;                 // dimension-graded
    GradedMap conn;                    // blocks keyed by p: A_(n+1-p) -> A^p
    GradedMap L_high;                  // shift +1 on A_high
    GradedMap L_low;                   // shift -1 on A_low (cap with the polarization)
    std::map<int, RatMatrix> pair;     // p -> (dim A^p) x (dim A_p)
    GradedPairing cap_pair;            // total n on A_high
};

/// Cograded view of A_low: degree p holds A_(n+1-p).
GradedSpace colow_space(const SpecialFiberData& f);
/// L_low rewritten on the cograded view (shift +1).
GradedMap colow_operator(const SpecialFiberData& f);

void validate_special_fiber(const SpecialFiberData& f);

struct VanishingNearby {
    std::map<int, Subspace> phi;            // Im(conn) ⊆ A^p
    std::map<int, RatMatrix> phi_preimage;  // columns: one preimage per phi basis vector
    Presented phi_mod;                      // submodule, center (n+1)/2
    Presented psi;                          // quotient A/phi, center n/2
    std::map<int, Subspace> psi_low;        // Ker(conn) ⊆ cograded A_low
    GradedPairing phi_pair;                 // total n+1 on phi_mod
    GradedPairing psi_pair;                 // total n on psi
    /// harmonic complement of psi_low in A_low (cograded), present exactly
    /// when the Lefschetz predicates hold on this instance
    std::map<int, Subspace> phi_low_harmonic;
};

VanishingNearby vanishing_nearby(const SpecialFiberData& f);

struct ConjectureReport {
    bool nd = false;
    bool lef_phi = false;
    bool lef_psi = false;
    bool hod_phi = false;
    bool hod_psi = false;
    bool all() const { return nd && lef_phi && lef_psi && hod_phi && hod_psi; }
};

/// Evaluates the perfect-pairing and Lefschetz/Hodge predicates exactly on
/// the instance. Report-style: never throws on predicate failure.
ConjectureReport conjecture_report(const SpecialFiberData& f);

struct HarmonicData {
    GradedMap sigma;                        // psi -> A_high, the L-linear section
    std::map<int, Subspace> harmonic;       // 𝒜_psi ⊆ A^p
    std::map<int, Subspace> phi_low;        // orthogonal complement of harmonic in A_low
};

/// The unique L-stable complement of Im(conn) inside A^*, computed through
/// the two-step lifting. Requires both Lefschetz predicates.
HarmonicData harmonic_split(const SpecialFiberData& f);

struct Cycle {
    int p = 0;
    RatMatrix coords; // column
};

/// Cycle-level model above a special fiber: an ambient cycle space with
/// pushforward from the fiber, curvature map back to it, restriction to the
/// generic fiber, and an intersection pairing between complementary degrees.
struct LocalModel {
    SpecialFiberData fiber;
    GradedSpace Zhat;                 // codimension-graded ambient cycle space
    GradedMap i_star;                 // cograded A_low -> Zhat (shift 0)
    GradedMap omega;                  // Zhat -> A_high (curvature, shift 0)
    GradedSpace Zeta;                 // generic-fiber cycle presentation
    GradedMap eta_restrict;           // Zhat -> Zeta (shift 0)
    std::map<int, RatMatrix> zpair;   // p -> (Zhat^p x Zhat^(n+1-p))
    std::map<std::string, Cycle> cycles; // named instance cycles
};

void validate_local_model(const LocalModel& m);

/// Curvature membership test: omega(z) inside the harmonic subspace.
bool is_admissible(const LocalModel& m, const Cycle& z);

struct LiftResult {
    Cycle cycle;      // the lifted class
    RatMatrix g;      // fiber correction: cycle = z + i_star(g)
};

/// The unique admissible modification z + i_star(g) with g orthogonal to the
/// harmonic forms in complementary degree. Requires the nd and Lefschetz
/// predicates (or a smooth model, where the lift is the identity).
LiftResult arakelov_lift(const LocalModel& m, const Cycle& z_zar);

/// Height pairing value zpair(z^Ara, w_zar) for complementary degrees.
Rat local_height(const LocalModel& m, const Cycle& z, const Cycle& w_zar);

/// Admissible lift with curvature zero; exists when the harmonic component
/// of the curvature vanishes (instance-level homological triviality), else
/// HypothesisError.
LiftResult bb_lift(const LocalModel& m, const Cycle& z_zar);

} // namespace lefkit
