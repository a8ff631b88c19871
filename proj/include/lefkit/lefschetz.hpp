#pragma once

#include "lefkit/graded.hpp"

#include <vector>

namespace lefkit {

/// Graded space with a degree-1 operator and an integer n; the hard Lefschetz
/// condition L^(n-2i): V^i -> V^(n-i) bijective (center n/2) is checked by
/// check_hard_lefschetz, never assumed by the type.
struct LefschetzModule {
    GradedSpace space;
    GradedMap L; // shift +1
    int n = 0;
};

/// Shape validation only: L blocks sized by space, shift +1, n >= 0.
void validate_module(const LefschetzModule& m, const std::string& name = "module");

struct HardLefschetzReport {
    bool holds = true;
    std::vector<int> failures; // offending degrees
};

/// Checks every power map L^(n-2i): V^i -> V^(n-i) for i <= n/2, plus the
/// implied one-step conditions (L injective below the center, surjective at
/// or above it), which pins failures to individual degrees.
HardLefschetzReport check_hard_lefschetz(const LefschetzModule& m);

struct PrimitiveDecomposition {
    /// primitive[i] = Ker(L^(n+1-2i)|V^i) for degrees i <= n/2 in the support.
    std::map<int, Subspace> primitive;
    /// expansion_basis[d]: columns L^(d-j) v for primitive basis vectors v of
    /// degree j; spans V^d. expansion_tags[d] records (j, k=d-j) per column.
    std::map<int, RatMatrix> expansion_basis;
    std::map<int, std::vector<std::pair<int, int>>> expansion_tags;
};

/// Throws HypothesisError when hard Lefschetz fails.
PrimitiveDecomposition primitive_parts(const LefschetzModule& m);

/// The unique degree -1 operator with [Lambda, L] = (n-2i)·id on V^i.
/// Constructed through the Lefschetz decomposition; throws HypothesisError
/// when hard Lefschetz fails.
GradedMap lambda_operator(const LefschetzModule& m);

/// A submodule or subquotient of an ambient module, presented with an
/// inclusion/section into the ambient space and a projection back.
/// proj ∘ incl = id; the module's L is the induced operator.
struct Presented {
    LefschetzModule mod;
    GradedMap incl; // mod -> ambient (shift 0)
    GradedMap proj; // ambient -> mod (shift 0)
};

/// Presentation of an L-stable graded subspace family S ⊆ V.
/// Throws ContractError when S is not L-stable.
Presented sub_presentation(const LefschetzModule& v, const std::map<int, Subspace>& s, int n_sub);

/// Presentation of the quotient V/S for L-stable S.
Presented quotient_presentation(const LefschetzModule& v, const std::map<int, Subspace>& s,
                                int n_quot);

/// Presentation of T/S inside V for L-stable S ⊆ T.
Presented subquotient_presentation(const LefschetzModule& v, const std::map<int, Subspace>& s,
                                   const std::map<int, Subspace>& t, int n_q);

/// Subspace at degree d from a per-degree family (empty default).
Subspace family_at(const std::map<int, Subspace>& fam, const GradedSpace& v, int d);

} // namespace lefkit
