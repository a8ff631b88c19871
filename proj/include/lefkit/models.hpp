#pragma once

#include "lefkit/global_arakelov.hpp"
#include "lefkit/rng.hpp"

namespace lefkit {

/// dims 1 in degrees 0..n, identity L blocks, <h^i, h^(n-i)> = 1.
struct ProjectiveSpaceModel {
    LefschetzModule module;
    GradedPairing pairing;
};
ProjectiveSpaceModel projective_space_module(int n);

/// Dual graph of a one-dimensional degenerate fiber: component count,
/// symmetric intersection matrix with zero row sums, and the positive
/// polarization degrees of the components.
struct ReductionGraph {
    int components = 0;
    RatMatrix intersection;          // r x r, integer entries
    std::vector<Rat> l_degrees;      // size r, positive
    RatMatrix horizontal;            // optional r x r symmetric section-intersections (default 0)
};

void validate_reduction_graph(const ReductionGraph& g);

struct GraphModel {
    SpecialFiberData fiber;
    LocalModel model;
};

/// Curve-case generator (n = 1): fiber data with conn = the intersection
/// matrix, plus a cycle model with one horizontal section through each
/// component and the vertical classes, named sec<i>/vert<i> (1-based) and
/// diff<i><j> for section differences.
GraphModel reduction_graph_model(const ReductionGraph& g);

/// Strata data for a strictly semistable fiber: one module per component
/// (center n/2), one per pairwise intersection (center (n-1)/2), restriction
/// and Gysin maps between them, and the stratum intersection pairings.
struct StrataData {
    int n = 0;                                  // fiber dimension
    std::vector<LefschetzModule> components;    // A of each component, n_comp = n
    std::vector<GradedPairing> component_pairs; // total n each
    struct PairStratum {
        int i = 0, j = 0;                       // i < j, 0-based component ids
        LefschetzModule module;                 // center (n-1)/2
        GradedPairing pairing;                  // total n-1
        GradedMap res_i, res_j;                 // A(Y_i) -> A(Y_ij), shift 0
        GradedMap gysin_i, gysin_j;             // A(Y_ij) -> A(Y_i), shift +1
    };
    std::vector<PairStratum> intersections;
};

void validate_strata(const StrataData& s);

/// Assembles the kernel/cokernel cycle groups of the strata diagram, the
/// induced connection map, polarization action and pairings, and verifies
/// the commuting square on the output.
SpecialFiberData bgs_assemble(const StrataData& s);

struct RandomBounds {
    int max_prim_dim = 2; // primitive multiplicity cap per degree
    int max_n = 4;        // cap for the base center parameter
};

/// Random Lefschetz module with a compatible pairing, built from random
/// primitive data and conjugated by a random change of basis; optionally
/// plants a sign flip so the Hodge verdict is false. Deterministic per seed.
struct RandomModule {
    LefschetzModule module;
    GradedPairing pairing;
    bool hodge_true = true;
};
RandomModule random_lefschetz_module(Rng& rng, const RandomBounds& b, bool plant_flip);

struct RandomFilteredOptions {
    RandomBounds bounds;
    bool plant_hodge_flip = false; // random sign flips in the piece pairings
    bool break_pairing = false;    // damage orthogonality for error-path tests
};

struct RandomFiltered {
    FilteredLefschetzModule filtered;
    GradedPairing pairing;
    bool hodge_true = true;
};

/// Instance satisfying every hypothesis of the three-step splitting theorem
/// by construction: random graded pieces with matching shifted structure, a
/// block-form operator and pairing, then a random filtered change of basis.
RandomFiltered random_filtered_instance(std::uint64_t seed, const RandomFilteredOptions& opt);

/// Arithmetic-surface-style global instance (n = 1): generic degree dk > 0,
/// self-intersection lsq of the polarization, negative-definite height Gram
/// on the degree-0 part, and reduction graphs of the bad fibers attached as
/// slices. Named cycles: "c1L", "pic<j>", "point".
ArakelovData arithmetic_surface_toy(const Rat& dk, const Rat& lsq, const RatMatrix& nt_gram,
                                    const std::vector<ReductionGraph>& fibers);

} // namespace lefkit
