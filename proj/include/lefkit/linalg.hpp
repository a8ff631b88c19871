#pragma once

#include "lefkit/matrix.hpp"

#include <optional>
#include <vector>

namespace lefkit {

struct Rref {
    RatMatrix mat;
    std::vector<int> pivots; // pivot column per nonzero row
};

/// Reduced row echelon form (Gauss-Jordan, exact).
Rref rref(RatMatrix a);

int rank(const RatMatrix& a);

/// Canonical basis of Ker(a), returned as rows in reduced echelon form.
RatMatrix kernel_basis(const RatMatrix& a);

/// Canonical basis of the column space of a, returned as rows (length = a.rows()).
RatMatrix image_basis(const RatMatrix& a);

struct ImageKernel {
    RatMatrix image;  // rows: canonical basis of Im(a)
    RatMatrix kernel; // rows: canonical basis of Ker(a)
};
ImageKernel image_kernel(const RatMatrix& a);

struct LinSolve {
    RatMatrix particular; // column, free variables set to 0
    RatMatrix kernel;     // rows: canonical basis of Ker(a)
};

/// Solve a·x = b for a column b. Returns nullopt when inconsistent.
std::optional<LinSolve> solve(const RatMatrix& a, const RatMatrix& b);

/// Solve a·X = B column by column; nullopt if any column is inconsistent.
std::optional<RatMatrix> solve_matrix(const RatMatrix& a, const RatMatrix& b);

struct Signature {
    int plus = 0, minus = 0, zero = 0;
    bool operator==(const Signature&) const = default;
};

/// Sylvester signature of a symmetric matrix, computed exactly by symmetric
/// congruence reduction. Throws ContractError on non-symmetric input.
Signature signature(RatMatrix g);

std::optional<RatMatrix> inverse(const RatMatrix& a);
Rat det(RatMatrix a);

/// A linear subspace of Q^ambient, held as a canonical reduced-echelon row
/// basis so equality of subspaces is plain matrix equality.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {}
    static Subspace span_rows(int ambient, const RatMatrix& rows);
    static Subspace full(int ambient);

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const RatMatrix& basis() const { return basis_; }
    std::vector<int> pivots() const { return pivots_; }

    bool contains(const RatMatrix& col) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;

    /// Coordinates of a member column in this basis; nullopt if not a member.
    std::optional<RatMatrix> coordinates(const RatMatrix& col) const;

private:
    int ambient_ = 0;
    RatMatrix basis_; // dim x ambient, RREF rows
    std::vector<int> pivots_;
};

/// Canonical complement of S inside T (requires S ⊆ T): echelon rows whose
/// span ⊕ S equals T.
RatMatrix complement_in(const Subspace& s, const Subspace& t);

/// {y in Q^right : B·G·y = 0} for the rows B of s; the right-radical of the
/// pairing G restricted to s on the left.
Subspace right_perp(const Subspace& s, const RatMatrix& gram);

/// Presentation of the subquotient T/S of Q^ambient (S ⊆ T), with a canonical
/// section (columns) and a total projection (zero on S and on a fixed
/// complement of T). proj·section = identity.
struct DegPresentation {
    RatMatrix section; // ambient x q
    RatMatrix proj;    // q x ambient
};
DegPresentation present_subquotient(const Subspace& s, const Subspace& t);

/// Presentation of a subspace S: section = basis columns, proj a left inverse.
DegPresentation present_sub(const Subspace& s);

// ---- dense univariate polynomials over Q (for the polarization twist) ----

using Poly = std::vector<Rat>; // coefficient list, index = degree

Rat poly_eval(const Poly& p, const Rat& x);
bool poly_is_zero(const Poly& p);

/// Unique interpolating polynomial through (xs[k], ys[k]); xs distinct.
Poly lagrange_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

/// Cauchy root bound: every real root r satisfies |r| <= bound.
Rat cauchy_root_bound(const Poly& p);

} // namespace lefkit
