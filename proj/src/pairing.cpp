#include "lefkit/pairing.hpp"

#include "lefkit/errors.hpp"

#include <set>

namespace lefkit {

RatMatrix pairing_block(const GradedPairing& p, const GradedSpace& v, int d) {
    const int r = v.dim(d), c = v.dim(p.total - d);
    auto it = p.blocks.find(d);
    if (it == p.blocks.end()) return RatMatrix(r, c);
    if (it->second.rows() != r || it->second.cols() != c)
        throw ContractError("GradedPairing: block shape mismatch at degree " + std::to_string(d));
    return it->second;
}

void set_pairing_block(GradedPairing& p, int d, const RatMatrix& m) {
    if (m.empty() || m.is_zero()) {
        p.blocks.erase(d);
        return;
    }
    p.blocks[d] = m;
}

void validate_pairing(const GradedPairing& p, const GradedSpace& v, const std::string& name) {
    for (auto& [d, b] : p.blocks)
        if (b.rows() != v.dim(d) || b.cols() != v.dim(p.total - d))
            throw ContractError(name + ": block shape mismatch at degree " + std::to_string(d));
}

bool pairing_symmetric(const GradedPairing& p, const GradedSpace& v) {
    for (auto& [d, n] : v.dims)
        if (pairing_block(p, v, d) != pairing_block(p, v, p.total - d).transpose()) return false;
    return true;
}

bool pairing_nondegenerate(const GradedPairing& p, const GradedSpace& v) {
    std::set<int> degs;
    for (auto& [d, n] : v.dims) { degs.insert(d); degs.insert(p.total - d); }
    for (int d : degs) {
        const RatMatrix b = pairing_block(p, v, d);
        if (b.rows() != b.cols() || rank(b) != b.rows()) return false;
    }
    return true;
}

bool check_adjoint(const GradedPairing& p, const GradedMap& f, const GradedSpace& v) {
    if (f.shift != 1) throw ContractError("check_adjoint: operator must have degree +1");
    validate_pairing(p, v, "pairing");
    validate_map(f, v, v, "operator");
    for (auto& [d, n] : v.dims) {
        // <f x, y> for x in V^d, y in V^(total-d-1) against <x, f y>
        const RatMatrix lhs = map_block(f, v, v, d).transpose() * pairing_block(p, v, d + 1);
        const RatMatrix rhs = pairing_block(p, v, d) * map_block(f, v, v, p.total - d - 1);
        if (lhs != rhs) return false;
    }
    return true;
}

HodgeReport hodge_index_check(const LefschetzModule& m, const GradedPairing& p) {
    if (p.total != m.n)
        throw ContractError("hodge_index_check: pairing total must equal the module's n");
    if (!check_adjoint(p, m.L, m.space))
        throw HypothesisError("hodge_index_check: pairing is not L-adjoint");
    if (!pairing_symmetric(p, m.space))
        throw HypothesisError("hodge_index_check: pairing is not symmetric");
    const auto hl = check_hard_lefschetz(m);
    if (!hl.holds) throw HypothesisError("hodge_index_check: hard Lefschetz fails");
    HodgeReport rep;
    const int n = m.n;
    for (auto& [i, dim] : m.space.dims) {
        if (dim == 0 || 2 * i > n) continue;
        const RatMatrix prim = kernel_basis(power_block(m.space, m.L, i, n + 1 - 2 * i));
        if (prim.rows() == 0) continue;
        const RatMatrix form = pairing_block(p, m.space, i) * power_block(m.space, m.L, i, n - 2 * i);
        RatMatrix gram = prim * form * prim.transpose();
        if (i % 2 != 0) gram = -gram;
        if (!gram.is_symmetric())
            throw HypothesisError("hodge_index_check: restricted form not symmetric at degree " +
                                  std::to_string(i));
        const Signature sig = signature(gram);
        rep.verdict = rep.verdict && (sig.plus == prim.rows());
        rep.primitive_signatures.emplace(i, sig);
    }
    return rep;
}

namespace {

void require_orthogonal_complements(const FilteredLefschetzModule& f, const GradedPairing& p) {
    // F2^d must be exactly the right-perp of F1^(n+1-d) and vice versa
    for (auto& [d, dim] : f.V.space.dims) {
        const Subspace f1 = family_at(f.F1, f.V.space, p.total - d);
        const Subspace f2 = family_at(f.F2, f.V.space, d);
        const Subspace perp = right_perp(f1, pairing_block(p, f.V.space, p.total - d));
        if (perp != f2)
            throw HypothesisError(
                "pairing: F2 is not the orthogonal complement of F1 at degree " + std::to_string(d));
    }
}

} // namespace

InducedPairings induced_graded_pairings(const FilteredLefschetzModule& f, const GradedPairing& p,
                                        const ThreeStepSplitting& s) {
    validate_pairing(p, f.V.space, "pairing");
    if (!pairing_symmetric(p, f.V.space))
        throw HypothesisError("induced_graded_pairings: pairing not symmetric");
    require_orthogonal_complements(f, p);
    const GradedPieces g = graded_pieces(f);
    const int n = f.V.n - 1;
    InducedPairings out;
    out.p00.total = g.G0.mod.n;
    out.p11.total = g.G1.mod.n;
    out.p22.total = g.G2.mod.n;

    // p02 via canonical sections (independent of the splitting: F2 ⊥ F1)
    for (auto& [d, dim] : g.G0.mod.space.dims) {
        const RatMatrix sect0 = map_block(g.G0.incl, g.G0.mod.space, f.V.space, d);
        const RatMatrix incl2 = map_block(g.G2.incl, g.G2.mod.space, f.V.space, n + 1 - d);
        const RatMatrix blk = sect0.transpose() * pairing_block(p, f.V.space, d) * incl2;
        out.p02.emplace(d, blk);
    }
    // p11 via the canonical G1 section
    for (auto& [d, dim] : g.G1.mod.space.dims) {
        const RatMatrix s1 = map_block(g.G1.incl, g.G1.mod.space, f.V.space, d);
        const RatMatrix s1c = map_block(g.G1.incl, g.G1.mod.space, f.V.space, n + 1 - d);
        set_pairing_block(out.p11, d, s1.transpose() * pairing_block(p, f.V.space, d) * s1c);
    }
    // p00_d = p02_d · beta_(n-d);  p22_d = (beta^{-1}_d)^T · p02_(d-1)
    auto p02_at = [&](int d) -> RatMatrix {
        auto it = out.p02.find(d);
        if (it != out.p02.end()) return it->second;
        return RatMatrix(g.G0.mod.space.dim(d), g.G2.mod.space.dim(n + 1 - d));
    };
    for (auto& [d, dim] : g.G0.mod.space.dims) {
        const RatMatrix b = map_block(s.beta, g.G0.mod.space, g.G2.mod.space, n - d);
        set_pairing_block(out.p00, d, p02_at(d) * b);
    }
    // (z,z')_22 = (beta^{-1} z, z')_02 with beta^{-1} z in G0^(d-1)
    for (auto& [d, dim] : g.G2.mod.space.dims) {
        if (dim == 0) continue;
        const RatMatrix b = map_block(s.beta, g.G0.mod.space, g.G2.mod.space, d - 1);
        if (b.rows() != b.cols() || rank(b) != b.rows())
            throw HypothesisError("induced_graded_pairings: beta not invertible at degree " +
                                  std::to_string(d - 1));
        const RatMatrix binv = *inverse(b);
        set_pairing_block(out.p22, d, binv.transpose() * p02_at(d - 1));
    }

    // relation chain: the nontrivial link is (x,y)_00 = (beta x, y)_20, i.e.
    // p02_d · beta_(n-d) = (p02_(n-d) · beta_d)^T; the others are definitional.
    for (auto& [d, dim] : g.G0.mod.space.dims) {
        const RatMatrix bd = map_block(s.beta, g.G0.mod.space, g.G2.mod.space, d);
        const RatMatrix bnd = map_block(s.beta, g.G0.mod.space, g.G2.mod.space, n - d);
        if (p02_at(d) * bnd != (p02_at(n - d) * bd).transpose())
            throw HypothesisError("induced_graded_pairings: relation chain fails at degree " +
                                  std::to_string(d));
    }
    return out;
}

bool block_form_check(const FilteredLefschetzModule& f, const GradedPairing& p,
                      const ThreeStepSplitting& s) {
    validate_pairing(p, f.V.space, "pairing");
    if (!pairing_symmetric(p, f.V.space))
        throw HypothesisError("block_form_check: pairing not symmetric");
    if (!check_adjoint(p, f.V.L, f.V.space))
        throw HypothesisError("block_form_check: pairing not L-adjoint");
    if (!pairing_nondegenerate(p, f.V.space))
        throw HypothesisError("block_form_check: pairing degenerate");
    const int n = f.V.n - 1;
    // F2 isotropic and F1 = F2-perp
    for (auto& [d, dim] : f.V.space.dims) {
        const Subspace f2 = family_at(f.F2, f.V.space, d);
        const Subspace f2c = family_at(f.F2, f.V.space, n + 1 - d);
        if (f2.dim() > 0 && f2c.dim() > 0) {
            const RatMatrix gram = f2.basis() * pairing_block(p, f.V.space, d) * f2c.basis().transpose();
            if (!gram.is_zero())
                throw HypothesisError("block_form_check: F2 not isotropic at degree " +
                                      std::to_string(d));
        }
        const Subspace f2perp = right_perp(f2, pairing_block(p, f.V.space, d));
        if (f2perp != family_at(f.F1, f.V.space, n + 1 - d))
            throw HypothesisError("block_form_check: F1 is not the orthogonal complement of F2");
    }
    const GradedPieces g = graded_pieces(f);
    const InducedPairings ip = induced_graded_pairings(f, p, s);
    auto p02_at = [&](int d) -> RatMatrix {
        auto it = ip.p02.find(d);
        if (it != ip.p02.end()) return it->second;
        return RatMatrix(g.G0.mod.space.dim(d), g.G2.mod.space.dim(n + 1 - d));
    };
    for (auto& [d, dim] : f.V.space.dims) {
        const int e = n + 1 - d;
        const RatMatrix a0 = map_block(s.alpha0, g.G0.mod.space, f.V.space, d);
        const RatMatrix a1 = map_block(s.alpha1, g.G1.mod.space, f.V.space, d);
        const RatMatrix a2 = map_block(s.alpha2, g.G2.mod.space, f.V.space, d);
        const RatMatrix b0 = map_block(s.alpha0, g.G0.mod.space, f.V.space, e);
        const RatMatrix b1 = map_block(s.alpha1, g.G1.mod.space, f.V.space, e);
        const RatMatrix b2 = map_block(s.alpha2, g.G2.mod.space, f.V.space, e);
        const RatMatrix gr = pairing_block(p, f.V.space, d);
        if (!(a0.transpose() * gr * b0).is_zero()) return false;
        if (!(a0.transpose() * gr * b1).is_zero()) return false;
        if (!(a1.transpose() * gr * b0).is_zero()) return false;
        if (!(a1.transpose() * gr * b2).is_zero()) return false;
        if (!(a2.transpose() * gr * b1).is_zero()) return false;
        if (!(a2.transpose() * gr * b2).is_zero()) return false;
        if (a0.transpose() * gr * b2 != p02_at(d)) return false;
        if (a1.transpose() * gr * b1 != pairing_block(ip.p11, g.G1.mod.space, d)) return false;
        if (a2.transpose() * gr * b0 != p02_at(e).transpose()) return false;
    }
    return true;
}

HodgeEquivalenceReport hodge_equivalence_check(const FilteredLefschetzModule& f,
                                               const GradedPairing& p,
                                               const ThreeStepSplitting& s) {
    const GradedPieces g = graded_pieces(f);
    const InducedPairings ip = induced_graded_pairings(f, p, s);
    HodgeEquivalenceReport rep;
    rep.v_side = hodge_index_check(f.V, p).verdict;
    const bool g1 = hodge_index_check(g.G1.mod, ip.p11).verdict;
    const bool g0 = hodge_index_check(g.G0.mod, ip.p00).verdict;
    rep.g_side = g1 && g0;
    rep.agree = (rep.v_side == rep.g_side);
    return rep;
}

namespace {

// Determinant of the k-step power of (L + c.eps) from degree i, as an exact
// polynomial in c, computed by interpolation at integer nodes.
Poly power_det_poly(const LefschetzModule& v, const GradedMap& eps, int i, int k) {
    const int dim = v.space.dim(i);
    const int points = k * dim + 1;
    std::vector<Rat> xs, ys;
    for (int t = 0; t < points; ++t) {
        const Rat c(static_cast<long>(t));
        GradedMap lc = map_add(v.L, map_scale(eps, c), v.space, v.space);
        xs.emplace_back(c);
        ys.push_back(det(power_block(v.space, lc, i, k)));
    }
    return lagrange_interpolate(xs, ys);
}

Poly minor_poly(const RatMatrix& s0, const RatMatrix& sa, int k) {
    std::vector<Rat> xs, ys;
    for (int t = 0; t <= k; ++t) {
        const Rat c(static_cast<long>(t));
        RatMatrix m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m.at(i, j) = s0.at(i, j) + c * sa.at(i, j);
        xs.emplace_back(c);
        ys.push_back(det(m));
    }
    return lagrange_interpolate(xs, ys);
}

} // namespace

Rat find_polarization_twist(const FilteredLefschetzModule& f, const GradedPairing& p,
                            const ThreeStepSplitting& s, const GradedMap& eps_op) {
    validate_map(eps_op, f.V.space, f.V.space, "eps");
    if (eps_op.shift != 1) throw ContractError("find_polarization_twist: eps must have degree +1");
    if (!check_adjoint(p, eps_op, f.V.space))
        throw HypothesisError("find_polarization_twist: eps is not self-adjoint for the pairing");
    const GradedPieces g = graded_pieces(f);
    const int n = f.V.n - 1;
    // eps must kill F1 and land in F2
    for (auto& [d, dim] : f.V.space.dims) {
        const Subspace f1 = family_at(f.F1, f.V.space, d);
        const Subspace f2next = family_at(f.F2, f.V.space, d + 1);
        const RatMatrix e = map_block(eps_op, f.V.space, f.V.space, d);
        if (f1.dim() > 0 && !(e * f1.basis().transpose()).is_zero())
            throw HypothesisError("find_polarization_twist: eps does not kill F1");
        for (int c = 0; c < dim; ++c) {
            RatMatrix col(dim, 1);
            col.at(c, 0) = Rat(1);
            if (!f2next.contains(e * col))
                throw HypothesisError("find_polarization_twist: eps image not inside F2");
        }
    }
    const InducedPairings ip = induced_graded_pairings(f, p, s);
    // perfectness of the G0 x G2 pairing
    for (auto& [d, dim] : g.G0.mod.space.dims) {
        auto it = ip.p02.find(d);
        const RatMatrix blk = it != ip.p02.end()
                                  ? it->second
                                  : RatMatrix(dim, g.G2.mod.space.dim(n + 1 - d));
        if (blk.rows() != blk.cols() || rank(blk) != blk.rows())
            throw HypothesisError("find_polarization_twist: G0 x G2 pairing not perfect");
    }
    // eps_bar : G0 -> G2 (+1) and the twist pairing (x,y)_A = (x, eps_bar y)_02
    GradedMap ebar;
    ebar.shift = 1;
    for (auto& [d, dim] : g.G0.mod.space.dims) {
        const RatMatrix m = map_block(g.G2.proj, f.V.space, g.G2.mod.space, d + 1) *
                            map_block(eps_op, f.V.space, f.V.space, d) *
                            map_block(g.G0.incl, g.G0.mod.space, f.V.space, d);
        set_block(ebar, d, m);
    }
    auto p02_at = [&](int d) -> RatMatrix {
        auto it = ip.p02.find(d);
        if (it != ip.p02.end()) return it->second;
        return RatMatrix(g.G0.mod.space.dim(d), g.G2.mod.space.dim(n + 1 - d));
    };

    // exact root bound over all obstruction polynomials
    Rat bound(0);
    const int nv = f.V.n;
    for (auto& [i, dim] : f.V.space.dims) {
        if (dim == 0 || 2 * i > nv) continue;
        if (f.V.space.dim(nv - i) != dim)
            throw HypothesisError("find_polarization_twist: dimensions not symmetric about the center");
        const Poly pi = power_det_poly(f.V, eps_op, i, nv - 2 * i);
        if (poly_is_zero(pi))
            throw HypothesisError("find_polarization_twist: power map identically singular at degree " +
                                  std::to_string(i));
        const Rat b = cauchy_root_bound(pi);
        if (b > bound) bound = b;
    }
    struct PrimForm { RatMatrix s0, sa; };
    std::vector<PrimForm> forms;
    for (auto& [j, dim] : g.G0.mod.space.dims) {
        if (dim == 0 || 2 * j > n) continue;
        const RatMatrix prim =
            kernel_basis(power_block(g.G0.mod.space, g.G0.mod.L, j, n + 1 - 2 * j));
        if (prim.rows() == 0) continue;
        const RatMatrix lpow = power_block(g.G0.mod.space, g.G0.mod.L, j, n - 2 * j);
        const RatMatrix base = pairing_block(ip.p00, g.G0.mod.space, j) * lpow;
        const RatMatrix twist = p02_at(j) * map_block(ebar, g.G0.mod.space, g.G2.mod.space, n - j) * lpow;
        RatMatrix s0 = prim * base * prim.transpose();
        RatMatrix sa = prim * twist * prim.transpose();
        if (j % 2 != 0) { s0 = -s0; sa = -sa; }
        forms.push_back({std::move(s0), std::move(sa)});
        for (int k = 1; k <= prim.rows(); ++k) {
            const Poly mk = minor_poly(forms.back().s0, forms.back().sa, k);
            if (poly_is_zero(mk))
                throw HypothesisError("find_polarization_twist: positivity cannot be reached "
                                      "(identically singular minor)");
            const Rat b = cauchy_root_bound(mk);
            if (b > bound) bound = b;
        }
    }
    long cmax = 1;
    {
        // ceil(bound) + 1
        const mpz_class num = bound.raw().get_num(), den = bound.raw().get_den();
        mpz_class q = num / den;
        if (q * den != num && sgn(num) > 0) q += 1;
        cmax = q.get_si() + 1;
        if (cmax < 1) cmax = 1;
    }
    for (long cv = 0; cv <= cmax; ++cv) {
        const Rat c(cv);
        LefschetzModule vt = f.V;
        vt.L = map_add(f.V.L, map_scale(eps_op, c), f.V.space, f.V.space);
        if (!check_hard_lefschetz(vt).holds) continue;
        bool pos = true;
        for (const auto& fm : forms) {
            RatMatrix m = fm.s0;
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) m.at(i, j) += c * fm.sa.at(i, j);
            const Signature sig = signature(m);
            if (sig.plus != m.rows()) { pos = false; break; }
        }
        if (!pos) continue;
        // independent re-check: rebuild the splitting on the twisted instance
        FilteredLefschetzModule ft{vt, f.F1, f.F2};
        const ThreeStepSplitting st = three_step_split(ft);
        const InducedPairings ipt = induced_graded_pairings(ft, p, st);
        const GradedPieces gt = graded_pieces(ft);
        if (!hodge_index_check(gt.G0.mod, ipt.p00).verdict)
            throw HypothesisError("find_polarization_twist: re-check failed at c = " + c.str());
        return c;
    }
    throw HypothesisError("find_polarization_twist: no admissible twist below the root bound; "
                          "hypotheses violated");
}

} // namespace lefkit
