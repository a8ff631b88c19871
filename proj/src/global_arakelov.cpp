#include "lefkit/global_arakelov.hpp"

#include "lefkit/errors.hpp"

#include <set>

namespace lefkit {

namespace {

FilteredLefschetzModule filtered_view(const ArakelovData& d) {
    return FilteredLefschetzModule{d.chbar, d.F1, d.F2};
}

std::set<int> support(const ArakelovData& d) {
    std::set<int> degs;
    for (auto& [p, dim] : d.chbar.space.dims) degs.insert(p);
    return degs;
}

} // namespace

void validate_arakelov(const ArakelovData& d) {
    if (d.n < 0) throw ContractError("arakelov: n must be non-negative");
    if (d.chbar.n != d.n + 1)
        throw ContractError("arakelov: the global module must have center (n+1)/2");
    validate_module(d.chbar, "chbar");
    validate_module(d.K.chk, "chk");
    validate_module(d.K.ak, "ak");
    validate_filtered(filtered_view(d));
    if (d.pair.total != d.n + 1) throw ContractError("arakelov: pairing total must be n+1");
    validate_pairing(d.pair, d.chbar.space, "pair");
    if (!pairing_symmetric(d.pair, d.chbar.space))
        throw ContractError("arakelov: pairing not symmetric");
    if (!check_adjoint(d.pair, d.chbar.L, d.chbar.space))
        throw ContractError("arakelov: pairing not L-adjoint");
    if (d.eps_op.shift != 1) throw ContractError("arakelov: eps must have degree +1");
    validate_map(d.eps_op, d.chbar.space, d.chbar.space, "eps");
    if (!check_adjoint(d.pair, d.eps_op, d.chbar.space))
        throw ContractError("arakelov: eps not self-adjoint");
    if (d.K.gen_proj.shift != 0 || d.K.cls.shift != 0)
        throw ContractError("arakelov: projections must have degree 0");
    validate_map(d.K.gen_proj, d.chbar.space, d.K.chk.space, "gen_proj");
    validate_map(d.K.cls, d.K.chk.space, d.K.ak.space, "cls");

    for (int p : support(d)) {
        const RatMatrix gp = map_block(d.K.gen_proj, d.chbar.space, d.K.chk.space, p);
        if (rank(gp) != d.K.chk.space.dim(p))
            throw ContractError("arakelov: gen_proj not surjective at degree " + std::to_string(p));
        const Subspace ker = Subspace::span_rows(d.chbar.space.dim(p), kernel_basis(gp));
        if (ker != family_at(d.F2, d.chbar.space, p))
            throw ContractError("arakelov: Ker(gen_proj) != B at degree " + std::to_string(p));
        const RatMatrix cp = map_block(d.K.cls, d.K.chk.space, d.K.ak.space, p);
        if (rank(cp) != d.K.ak.space.dim(p))
            throw ContractError("arakelov: cls not surjective at degree " + std::to_string(p));
        const Subspace kercg =
            Subspace::span_rows(d.chbar.space.dim(p), kernel_basis(cp * gp));
        if (kercg != family_at(d.F1, d.chbar.space, p))
            throw ContractError("arakelov: Ker(cls∘gen_proj) != F1 at degree " + std::to_string(p));
        // equivariance
        const RatMatrix l_gp = map_block(d.K.gen_proj, d.chbar.space, d.K.chk.space, p + 1) *
                               map_block(d.chbar.L, d.chbar.space, d.chbar.space, p);
        const RatMatrix gp_l = map_block(d.K.chk.L, d.K.chk.space, d.K.chk.space, p) * gp;
        if (l_gp != gp_l)
            throw ContractError("arakelov: gen_proj not L-equivariant at degree " + std::to_string(p));
        const RatMatrix l_cp = map_block(d.K.cls, d.K.chk.space, d.K.ak.space, p + 1) *
                               map_block(d.K.chk.L, d.K.chk.space, d.K.chk.space, p);
        const RatMatrix cp_l = map_block(d.K.ak.L, d.K.ak.space, d.K.ak.space, p) * cp;
        if (l_cp != cp_l)
            throw ContractError("arakelov: cls not L-equivariant at degree " + std::to_string(p));
        // orthogonal complements
        const Subspace f2 = family_at(d.F2, d.chbar.space, p);
        const Subspace perp = right_perp(f2, pairing_block(d.pair, d.chbar.space, p));
        if (perp != family_at(d.F1, d.chbar.space, d.n + 1 - p))
            throw ContractError("arakelov: F1 is not the orthogonal complement of B at degree " +
                                std::to_string(p));
        // eps kills F1 and maps into B
        const RatMatrix e = map_block(d.eps_op, d.chbar.space, d.chbar.space, p);
        const Subspace f1 = family_at(d.F1, d.chbar.space, p);
        if (f1.dim() > 0 && !(e * f1.basis().transpose()).is_zero())
            throw ContractError("arakelov: eps does not kill F1 at degree " + std::to_string(p));
        const Subspace f2next = family_at(d.F2, d.chbar.space, p + 1);
        for (int c = 0; c < e.cols(); ++c)
            if (!f2next.contains(e.col_matrix(c)))
                throw ContractError("arakelov: eps image not inside B at degree " + std::to_string(p));
    }
    for (const auto& s : d.slices) {
        if (s.n != d.n) throw ContractError("arakelov: slice relative dimension mismatch");
        validate_special_fiber(s);
    }
    for (auto& [name, z] : d.cycles)
        if (z.coords.cols() != 1 || z.coords.rows() != d.K.chk.space.dim(z.p))
            throw ContractError("arakelov: named cycle '" + name + "' has bad coordinates");
}

namespace {

// coordinate translations G0 -> ak and G1 -> Ker(cls) ⊆ chk
struct PieceCoords {
    GradedPieces g;
    std::map<int, RatMatrix> t0;     // G0^p -> ak^p, invertible
    std::map<int, RatMatrix> t0inv;
    std::map<int, RatMatrix> t1;     // G1^p -> chk^p (image = Ker(cls))
};

PieceCoords piece_coords(const ArakelovData& d) {
    PieceCoords pc;
    pc.g = graded_pieces(filtered_view(d));
    for (auto& [p, dim] : pc.g.G0.mod.space.dims) {
        const RatMatrix t = map_block(d.K.cls, d.K.chk.space, d.K.ak.space, p) *
                            map_block(d.K.gen_proj, d.chbar.space, d.K.chk.space, p) *
                            map_block(pc.g.G0.incl, pc.g.G0.mod.space, d.chbar.space, p);
        auto inv = inverse(t);
        if (!inv)
            throw ContractError("arakelov: G0 is not isomorphic to the cohomology-class group at "
                                "degree " + std::to_string(p));
        pc.t0.emplace(p, t);
        pc.t0inv.emplace(p, *inv);
    }
    for (auto& [p, dim] : pc.g.G1.mod.space.dims) {
        const RatMatrix t = map_block(d.K.gen_proj, d.chbar.space, d.K.chk.space, p) *
                            map_block(pc.g.G1.incl, pc.g.G1.mod.space, d.chbar.space, p);
        if (rank(t) != dim)
            throw ContractError("arakelov: G1 does not embed into the generic cycle group at "
                                "degree " + std::to_string(p));
        pc.t1.emplace(p, t);
    }
    return pc;
}

Rat pair_value(const ArakelovData& d, int p, const RatMatrix& x, const RatMatrix& y) {
    const RatMatrix v = x.transpose() * pairing_block(d.pair, d.chbar.space, p) * y;
    return v.at(0, 0);
}

GradedMap twisted_operator(const ArakelovData& d, const Rat& h) {
    return map_add(d.chbar.L, map_scale(d.eps_op, -h), d.chbar.space, d.chbar.space);
}

} // namespace

GlobalSplitting decompose(const ArakelovData& d) {
    validate_arakelov(d);
    const FilteredLefschetzModule f = filtered_view(d);
    const PieceCoords pc = piece_coords(d);
    GlobalSplitting out;
    out.S = three_step_split(f);
    if (!verify_block_form(f, out.S))
        throw HypothesisError("decompose: block form verification failed");
    if (!block_form_check(f, d.pair, out.S))
        throw HypothesisError("decompose: pairing block form failed");

    if (pc.g.G0.mod.space.dim(0) != 1)
        throw HypothesisError("decompose: the generic fundamental class must span degree 0");
    RatMatrix e0(1, 1);
    e0.at(0, 0) = Rat(1);
    out.fund = map_block(out.S.alpha0, pc.g.G0.mod.space, d.chbar.space, 0) * e0;
    out.eps_class = map_block(d.eps_op, d.chbar.space, d.chbar.space, 0) * out.fund;
    if (out.eps_class.is_zero())
        throw HypothesisError("decompose: the vertical degree-1 class vanishes");

    // beta([X_K]) = h_L · X_eps, solved and cross-checked
    const RatMatrix bvec = map_block(out.S.beta, pc.g.G0.mod.space, pc.g.G2.mod.space, 0) * e0;
    const RatMatrix ec = map_block(pc.g.G2.proj, d.chbar.space, pc.g.G2.mod.space, 1) * out.eps_class;
    if (ec.is_zero())
        throw HypothesisError("decompose: X_eps has no component in B");
    {
        auto sol = solve(ec, bvec);
        if (!sol || sol->kernel.rows() != 0)
            throw HypothesisError("decompose: beta of the fundamental class is not proportional "
                                  "to X_eps");
        out.h_L = sol->particular.at(0, 0);
    }
    {
        // h_L = deg(c1(L)^(n+1)) / ((n+1)·deg(c1(L_K)^n)), both read off the pairing
        const RatMatrix ltop = power_block(d.chbar.space, d.chbar.L, 0, d.n + 1) * out.fund;
        const Rat top = pair_value(d, 0, out.fund, ltop);
        const RatMatrix ln = power_block(d.chbar.space, d.chbar.L, 0, d.n) * out.fund;
        const Rat den = Rat(static_cast<long>(d.n + 1)) * pair_value(d, 1, out.eps_class, ln);
        if (den.is_zero())
            throw HypothesisError("decompose: the generic degree deg(c1(L_K)^n) vanishes");
        if (out.h_L != top / den)
            throw HypothesisError("decompose: height normalization mismatch between beta and the "
                                  "intersection numbers");
    }
    // null rescaling L0 = L - h_L·eps: c1(L0)^(n+1) = 0 and alpha0-compatibility
    const GradedMap l0 = twisted_operator(d, out.h_L);
    out.c1_L0 = map_block(l0, d.chbar.space, d.chbar.space, 0) * out.fund;
    if (!(power_block(d.chbar.space, l0, 0, d.n + 1) * out.fund).is_zero())
        throw HypothesisError("decompose: c1(L0)^(n+1) does not vanish");
    for (int i = 0; i <= d.n; ++i) {
        const RatMatrix lhs = map_block(out.S.alpha0, pc.g.G0.mod.space, d.chbar.space, i) *
                              (power_block(pc.g.G0.mod.space, pc.g.G0.mod.L, 0, i) * e0);
        const RatMatrix rhs = power_block(d.chbar.space, l0, 0, i) * out.fund;
        if (lhs != rhs)
            throw HypothesisError("decompose: alpha0(L^i [X_K]) != c1(L0)^i at power " +
                                  std::to_string(i));
    }
    return out;
}

namespace {

// the unique L-splitting chk = ak ⊕ Ker(cls): z -> (cls z, z - sigma(cls z))
struct ChkSplit {
    GradedMap sigma; // ak -> chk
    Presented ker;   // Ker(cls) as a module, center (n+1)/2
};

ChkSplit chk_split(const ArakelovData& d) {
    std::map<int, Subspace> kerc;
    for (auto& [p, dim] : d.K.chk.space.dims) {
        const RatMatrix cp = map_block(d.K.cls, d.K.chk.space, d.K.ak.space, p);
        kerc.emplace(p, Subspace::span_rows(dim, kernel_basis(cp)));
    }
    ChkSplit out;
    out.ker = sub_presentation(d.K.chk, kerc, d.n + 1);
    {
        const auto rep = check_hard_lefschetz(out.ker.mod);
        if (!rep.holds)
            throw HypothesisError("l_lift: hard Lefschetz fails on the homologically trivial part "
                                  "of the generic cycle group");
    }
    ExactSequence seq{out.ker.mod, d.K.chk, d.K.ak, out.ker.incl, d.K.cls};
    out.sigma = two_step_lift(seq);
    return out;
}

} // namespace

RatMatrix l_lift(const ArakelovData& d, const GlobalSplitting& s, const Cycle& z) {
    validate_arakelov(d);
    if (z.coords.cols() != 1 || z.coords.rows() != d.K.chk.space.dim(z.p))
        throw ContractError("l_lift: cycle coordinates do not match the generic group");
    const PieceCoords pc = piece_coords(d);
    const ChkSplit ks = chk_split(d);
    const int p = z.p;
    const RatMatrix zcl = map_block(d.K.cls, d.K.chk.space, d.K.ak.space, p) * z.coords;
    const RatMatrix z0 =
        z.coords - map_block(ks.sigma, d.K.ak.space, d.K.chk.space, p) * zcl;
    // translate into piece coordinates
    RatMatrix g0(pc.g.G0.mod.space.dim(p), 1);
    if (g0.rows() > 0) g0 = pc.t0inv.at(p) * zcl;
    else if (!zcl.is_zero())
        throw HypothesisError("l_lift: cohomology class outside the G0 presentation");
    RatMatrix g1(pc.g.G1.mod.space.dim(p), 1);
    if (g1.rows() > 0) {
        auto sol = solve(pc.t1.at(p), z0);
        if (!sol || sol->kernel.rows() != 0)
            throw HypothesisError("l_lift: homologically trivial component outside G1");
        g1 = sol->particular;
    } else if (!z0.is_zero()) {
        throw HypothesisError("l_lift: homologically trivial component outside G1");
    }
    const RatMatrix lift = map_block(s.S.alpha0, pc.g.G0.mod.space, d.chbar.space, p) * g0 +
                           map_block(s.S.alpha1, pc.g.G1.mod.space, d.chbar.space, p) * g1;
    // the lift projects back to z
    if (map_block(d.K.gen_proj, d.chbar.space, d.K.chk.space, p) * lift != z.coords)
        throw HypothesisError("l_lift: projection of the lift disagrees with the input");
    return lift;
}

Rat l_pairing(const ArakelovData& d, const GlobalSplitting& s, const Cycle& z1, const Cycle& z2) {
    if (z1.p + z2.p != d.n + 1)
        throw ContractError("l_pairing: degrees must sum to n+1");
    const RatMatrix v1 = l_lift(d, s, z1);
    const RatMatrix v2 = l_lift(d, s, z2);
    const Rat value = pair_value(d, z1.p, v1, v2);
    // independent route: the induced G1 pairing of the trivial components
    const PieceCoords pc = piece_coords(d);
    const ChkSplit ks = chk_split(d);
    const InducedPairings ip = induced_graded_pairings(filtered_view(d), d.pair, s.S);
    auto g1_coords = [&](const Cycle& z) -> RatMatrix {
        const RatMatrix zcl = map_block(d.K.cls, d.K.chk.space, d.K.ak.space, z.p) * z.coords;
        const RatMatrix z0 =
            z.coords - map_block(ks.sigma, d.K.ak.space, d.K.chk.space, z.p) * zcl;
        RatMatrix g1(pc.g.G1.mod.space.dim(z.p), 1);
        if (g1.rows() > 0) {
            auto sol = solve_matrix(pc.t1.at(z.p), z0);
            if (!sol) throw HypothesisError("l_pairing: trivial component outside G1");
            g1 = *sol;
        }
        return g1;
    };
    const RatMatrix a = g1_coords(z1), b = g1_coords(z2);
    Rat bb(0);
    if (a.rows() > 0 && b.rows() > 0) {
        const RatMatrix v = a.transpose() * pairing_block(ip.p11, pc.g.G1.mod.space, z1.p) * b;
        bb = v.at(0, 0);
    }
    if (value != bb)
        throw HypothesisError("l_pairing: the two pairing routes disagree");
    return value;
}

GsBbReport gs_beilinson_equivalence(const ArakelovData& d) {
    validate_arakelov(d);
    GsBbReport rep;
    const FilteredLefschetzModule f = filtered_view(d);
    // canonical presentations without hard-Lefschetz requirements
    const Presented g0 = quotient_presentation(d.chbar, d.F1, d.n);
    const Presented g1 = subquotient_presentation(d.chbar, d.F2, d.F1, d.n + 1);
    const Presented g2 = sub_presentation(d.chbar, d.F2, d.n + 2);

    // auxiliary perfectness of B x A
    for (auto& [p, dim] : g2.mod.space.dims) {
        const int q = d.n + 1 - p;
        const RatMatrix blk = map_block(g2.incl, g2.mod.space, d.chbar.space, p).transpose() *
                              pairing_block(d.pair, d.chbar.space, p) *
                              map_block(g0.incl, g0.mod.space, d.chbar.space, q);
        if (blk.rows() != blk.cols() || rank(blk) != blk.rows())
            throw HypothesisError("gs_beilinson: the B x A pairing is not perfect at degree " +
                                  std::to_string(p));
    }

    // gs predicate on the global module
    const bool hl_global = check_hard_lefschetz(d.chbar).holds;
    rep.gs = hl_global;
    if (hl_global) {
        try {
            rep.gs = hodge_index_check(d.chbar, d.pair).verdict;
        } catch (const HypothesisError&) {
            rep.gs = false;
        }
    }
    // beilinson predicate on G1 with the induced pairing
    GradedPairing p11;
    p11.total = d.n + 1;
    for (auto& [p, dim] : g1.mod.space.dims) {
        const RatMatrix s1 = map_block(g1.incl, g1.mod.space, d.chbar.space, p);
        const RatMatrix s1c = map_block(g1.incl, g1.mod.space, d.chbar.space, d.n + 1 - p);
        set_pairing_block(p11, p,
                          s1.transpose() * pairing_block(d.pair, d.chbar.space, p) * s1c);
    }
    rep.beilinson = check_hard_lefschetz(g1.mod).holds;
    if (rep.beilinson) {
        try {
            rep.beilinson = hodge_index_check(g1.mod, p11).verdict;
        } catch (const HypothesisError&) {
            rep.beilinson = false;
        }
    }
    rep.agree = (rep.gs == rep.beilinson);

    // the structural subgroups B', B'', C, D; C and D need the Lambda
    // operator, hence hard Lefschetz on the global module
    bool chain_ok = true, chain_eq = true;
    for (int p : support(d)) {
        const Subspace b = family_at(d.F2, d.chbar.space, p);
        // B' = Im(eps) at degree p
        const RatMatrix e = map_block(d.eps_op, d.chbar.space, d.chbar.space, p - 1);
        const Subspace bp = Subspace::span_rows(d.chbar.space.dim(p), image_basis(e));
        const Subspace f1prev = family_at(d.F1, d.chbar.space, d.n + 1 - p);
        const Subspace bpp = right_perp(f1prev, pairing_block(d.pair, d.chbar.space, d.n + 1 - p));
        rep.B_prime.emplace(p, bp);
        rep.B_dprime.emplace(p, bpp);
        if (!(b.contains(bp) && bpp.contains(b))) chain_ok = false;
        if (!(bp == b && b == bpp)) chain_eq = false;
    }
    rep.adm_standard = chain_eq;
    if (!chain_ok)
        throw HypothesisError("gs_beilinson: inclusion chain B' ⊆ B ⊆ B'' fails");

    if (!hl_global) return rep;
    rep.internals_available = true;
    const GradedMap lam = lambda_operator(d.chbar);
    // C = B + Lambda·B, degreewise
    std::map<int, Subspace> cfam;
    for (int p : support(d)) {
        const Subspace b = family_at(d.F2, d.chbar.space, p);
        RatMatrix rows = b.basis();
        const Subspace bnext = family_at(d.F2, d.chbar.space, p + 1);
        if (bnext.dim() > 0) {
            const RatMatrix lb =
                map_block(lam, d.chbar.space, d.chbar.space, p + 1) * bnext.basis().transpose();
            rows = rows.vstack(lb.transpose());
        }
        cfam.emplace(p, Subspace::span_rows(d.chbar.space.dim(p), rows));
        rep.C.emplace(p, cfam.at(p));
    }
    // stability of C under L and Lambda
    rep.c_stable = true;
    for (int p : support(d)) {
        const Subspace c = cfam.at(p);
        for (int t = 0; t < c.dim(); ++t) {
            const RatMatrix v = c.basis().row_matrix(t).transpose();
            const RatMatrix lv = map_block(d.chbar.L, d.chbar.space, d.chbar.space, p) * v;
            const Subspace cn = cfam.count(p + 1) ? cfam.at(p + 1)
                                                  : Subspace(d.chbar.space.dim(p + 1));
            if (!cn.contains(lv)) rep.c_stable = false;
            const RatMatrix av = map_block(lam, d.chbar.space, d.chbar.space, p) * v;
            const Subspace cp = cfam.count(p - 1) ? cfam.at(p - 1)
                                                  : Subspace(d.chbar.space.dim(p - 1));
            if (!cp.contains(av)) rep.c_stable = false;
        }
    }
    if (rep.c_stable) {
        const Presented cmod = sub_presentation(d.chbar, cfam, d.n + 1);
        rep.c_standard = check_hard_lefschetz(cmod.mod).holds;
        for (auto& [p, dim] : cmod.mod.space.dims) {
            const RatMatrix gram =
                map_block(cmod.incl, cmod.mod.space, d.chbar.space, p).transpose() *
                pairing_block(d.pair, d.chbar.space, p) *
                map_block(cmod.incl, cmod.mod.space, d.chbar.space, d.n + 1 - p);
            if (gram.rows() != gram.cols() || rank(gram) != gram.rows()) rep.c_standard = false;
        }
        // Lambda·B projects isomorphically onto G0
        rep.lambdaB_iso_A = true;
        for (int p : support(d)) {
            const Subspace bnext = family_at(d.F2, d.chbar.space, p + 1);
            RatMatrix lb(d.chbar.space.dim(p), 0);
            if (bnext.dim() > 0)
                lb = map_block(lam, d.chbar.space, d.chbar.space, p + 1) * bnext.basis().transpose();
            const RatMatrix proj = map_block(g0.proj, d.chbar.space, g0.mod.space, p) * lb;
            if (rank(proj) != g0.mod.space.dim(p) || rank(lb) != g0.mod.space.dim(p))
                rep.lambdaB_iso_A = false;
        }
        // D = orthogonal complement of C; F1 = B + D and G1 ≅ D
        rep.f1_eq_B_plus_D = true;
        rep.g1_iso_D = true;
        for (int p : support(d)) {
            const Subspace cq = cfam.count(d.n + 1 - p) ? cfam.at(d.n + 1 - p)
                                                        : Subspace(d.chbar.space.dim(d.n + 1 - p));
            const Subspace dd = right_perp(cq, pairing_block(d.pair, d.chbar.space, d.n + 1 - p));
            rep.D.emplace(p, dd);
            const Subspace b = family_at(d.F2, d.chbar.space, p);
            if (b.sum(dd) != family_at(d.F1, d.chbar.space, p)) rep.f1_eq_B_plus_D = false;
            const RatMatrix proj =
                map_block(g1.proj, d.chbar.space, g1.mod.space, p) * dd.basis().transpose();
            if (rank(proj) != g1.mod.space.dim(p) || dd.dim() - b.intersect(dd).dim() !=
                                                         g1.mod.space.dim(p))
                rep.g1_iso_D = false;
        }
    }
    return rep;
}

DivisorDecomposition divisor_decomposition(const ArakelovData& d) {
    validate_arakelov(d);
    // global index precondition: (x, L^(n-1)x) negative definite on Ker(L^n|chbar^1)
    {
        const RatMatrix ker = kernel_basis(power_block(d.chbar.space, d.chbar.L, 1, d.n));
        if (ker.rows() > 0) {
            const RatMatrix form = pairing_block(d.pair, d.chbar.space, 1) *
                                   power_block(d.chbar.space, d.chbar.L, 1, d.n - 1);
            const RatMatrix gram = ker * form * ker.transpose();
            const Signature sig = signature(gram);
            if (sig.minus != ker.rows())
                throw HypothesisError("divisor_decomposition: global index form not negative "
                                      "definite on Ker(L^n)");
        }
    }
    const GlobalSplitting gs = decompose(d);
    const PieceCoords pc = piece_coords(d);
    DivisorDecomposition out;
    out.h_L = gs.h_L;
    out.fund = gs.fund;
    out.c1_L0n = power_block(d.chbar.space, twisted_operator(d, gs.h_L), 0, d.n) * gs.fund;

    const int dim1 = d.chbar.space.dim(1);
    const Subspace f2_1 = family_at(d.F2, d.chbar.space, 1);
    out.alpha2 = f2_1.basis().transpose();

    // alpha1: section of G1^1 normalized by deg(L^n·lift) = 0
    const int g1dim = pc.g.G1.mod.space.dim(1);
    out.alpha1 = RatMatrix(dim1, g1dim);
    for (int t = 0; t < g1dim; ++t) {
        RatMatrix e(g1dim, 1);
        e.at(t, 0) = Rat(1);
        const RatMatrix base = map_block(pc.g.G1.incl, pc.g.G1.mod.space, d.chbar.space, 1) * e;
        // unknown correction in F2^1: <fund, L^n(base + F2^T u)> = 0
        const RatMatrix lpow = power_block(d.chbar.space, d.chbar.L, 1, d.n);
        const RatMatrix degrow =
            gs.fund.transpose() * pairing_block(d.pair, d.chbar.space, 0) * lpow;
        const RatMatrix sys = degrow * f2_1.basis().transpose();
        const RatMatrix rhs = (degrow * base).scaled(Rat(-1));
        auto sol = solve(sys, rhs.transpose());
        if (!sol || sol->kernel.rows() != 0)
            throw HypothesisError("divisor_decomposition: normalized lift of the trivial part "
                                  "not unique");
        const RatMatrix v = base + f2_1.basis().transpose() * sol->particular;
        for (int r = 0; r < dim1; ++r) out.alpha1.at(r, t) = v.at(r, 0);
    }

    // alpha0: section of G0^1 with the generic-side proportionality and the
    // intersection normalization deg(c1(L0)^n · lift) = 0
    const int g0dim = pc.g.G0.mod.space.dim(1);
    out.alpha0 = RatMatrix(dim1, g0dim);
    const Subspace f1_1 = family_at(d.F1, d.chbar.space, 1);
    // generic line: c1(L_K)^n inside chk^n
    const RatMatrix lk_line =
        power_block(d.K.chk.space, d.K.chk.L, 0, d.n) *
        (map_block(d.K.gen_proj, d.chbar.space, d.K.chk.space, 0) * gs.fund);
    for (int t = 0; t < g0dim; ++t) {
        RatMatrix e(g0dim, 1);
        e.at(t, 0) = Rat(1);
        const RatMatrix base = map_block(pc.g.G0.incl, pc.g.G0.mod.space, d.chbar.space, 1) * e;
        // unknowns: u over F1^1 basis, s the proportionality factor
        const int uf = f1_1.dim();
        const RatMatrix gen_pow = power_block(d.K.chk.space, d.K.chk.L, 1, d.n - 1) *
                                  map_block(d.K.gen_proj, d.chbar.space, d.K.chk.space, 1);
        const RatMatrix degrow =
            out.c1_L0n.transpose() * pairing_block(d.pair, d.chbar.space, d.n);
        // rows: gen-side condition then the degree condition
        const int grows = gen_pow.rows();
        RatMatrix sys(grows + 1, uf + 1);
        RatMatrix rhs(grows + 1, 1);
        const RatMatrix gen_u = gen_pow * f1_1.basis().transpose();
        const RatMatrix gen_b = gen_pow * base;
        for (int r = 0; r < grows; ++r) {
            for (int c = 0; c < uf; ++c) sys.at(r, c) = gen_u.at(r, c);
            sys.at(r, uf) = -lk_line.at(r, 0);
            rhs.at(r, 0) = -gen_b.at(r, 0);
        }
        const RatMatrix deg_u = degrow * f1_1.basis().transpose();
        for (int c = 0; c < uf; ++c) sys.at(grows, c) = deg_u.at(0, c);
        rhs.at(grows, 0) = -(degrow * base).at(0, 0);
        auto sol = solve(sys, rhs);
        if (!sol)
            throw HypothesisError("divisor_decomposition: no normalized cohomology lift exists");
        for (int r = 0; r < sol->kernel.rows(); ++r) {
            for (int c = 0; c < uf; ++c)
                if (!sol->kernel.at(r, c).is_zero())
                    throw HypothesisError("divisor_decomposition: cohomology lift not unique");
        }
        RatMatrix v = base;
        if (uf > 0) {
            RatMatrix u(uf, 1);
            for (int r = 0; r < uf; ++r) u.at(r, 0) = sol->particular.at(r, 0);
            v = base + f1_1.basis().transpose() * u;
        }
        for (int r = 0; r < dim1; ++r) out.alpha0.at(r, t) = v.at(r, 0);
    }
    return out;
}

RatMatrix divisor_l_lift(const ArakelovData& d, const DivisorDecomposition& dd,
                         const RatMatrix& m_coords) {
    if (m_coords.cols() != 1 || m_coords.rows() != d.K.chk.space.dim(1))
        throw ContractError("divisor_l_lift: bad divisor coordinates");
    const PieceCoords pc = piece_coords(d);
    const ChkSplit ks = chk_split(d);
    const RatMatrix mcl = map_block(d.K.cls, d.K.chk.space, d.K.ak.space, 1) * m_coords;
    const RatMatrix m0 =
        m_coords - map_block(ks.sigma, d.K.ak.space, d.K.chk.space, 1) * mcl;
    RatMatrix g0(pc.g.G0.mod.space.dim(1), 1);
    if (g0.rows() > 0) g0 = pc.t0inv.at(1) * mcl;
    RatMatrix g1(pc.g.G1.mod.space.dim(1), 1);
    if (g1.rows() > 0) {
        auto sol = solve_matrix(pc.t1.at(1), m0);
        if (!sol) throw HypothesisError("divisor_l_lift: trivial component outside G1");
        g1 = *sol;
    }
    const RatMatrix lift = dd.alpha0 * g0 + dd.alpha1 * g1;
    // re-verify the second display condition
    const RatMatrix v =
        dd.c1_L0n.transpose() * pairing_block(d.pair, d.chbar.space, d.n) * lift;
    if (!v.is_zero())
        throw HypothesisError("divisor_l_lift: deg(c1(L0)^n · lift) != 0");
    return lift;
}

namespace {

void check_slice_splittings(const SpecialFiberData& s) {
    const GradedSpace lo = colow_space(s);
    const GradedMap llo = colow_operator(s);
    const int n = s.n;
    // dimension-n classes: Q·[fiber] ⊕ {x : deg(L^n x) = 0}
    const int an = lo.dim(1);
    if (an == 0) return;
    if (s.A_high.dim(0) != 1)
        throw HypothesisError("slice splitting: the unit class must span codimension 0");
    RatMatrix fiber(an, 1);
    for (int i = 0; i < an; ++i) fiber.at(i, 0) = Rat(1);
    RatMatrix pair0(s.A_high.dim(0), s.A_low.dim(0));
    if (auto it = s.pair.find(0); it != s.pair.end()) pair0 = it->second;
    const RatMatrix degfun = pair0; // 1 x dim A_0
    const RatMatrix degpow = degfun * power_block(lo, llo, 1, n); // 1 x an
    const Subspace aphi_n = Subspace::span_rows(an, kernel_basis(degpow));
    const Subspace apsi_n = Subspace::span_rows(an, fiber.transpose());
    if (apsi_n.dim() + aphi_n.dim() != an || apsi_n.sum(aphi_n).dim() != an)
        throw HypothesisError("slice splitting: A_n != Q[fiber] ⊕ degree-null part");
    // dimension-1 classes: pairing-null part ⊕ L^(n-1) of the degree-null part
    const int a1 = lo.dim(n);
    if (a1 == 0) return;
    RatMatrix pairn(s.A_high.dim(n), s.A_low.dim(n));
    if (auto it = s.pair.find(n); it != s.pair.end()) pairn = it->second;
    const RatMatrix qn = map_block(s.conn, lo, s.A_high, n).transpose() * pairn; // a1-form vs A_n
    const Subspace apsi_1 = Subspace::span_rows(a1, kernel_basis(qn.transpose()));
    RatMatrix phi1 = (power_block(lo, llo, 1, n - 1) * aphi_n.basis().transpose()).transpose();
    const Subspace aphi_1 = Subspace::span_rows(a1, phi1);
    if (apsi_1.dim() + aphi_1.dim() != a1 || apsi_1.sum(aphi_1).dim() != a1)
        throw HypothesisError("slice splitting: A_1 != null part ⊕ L^(n-1) harmonic part");
}

} // namespace

ZeroCycleDecomposition zero_cycle_decomposition(const ArakelovData& d) {
    validate_arakelov(d);
    for (const auto& s : d.slices) check_slice_splittings(s);
    const DivisorDecomposition dd = divisor_decomposition(d);
    const PieceCoords pc = piece_coords(d);
    ZeroCycleDecomposition out;
    const int n = d.n;
    const int dimn = d.chbar.space.dim(n);
    const RatMatrix g1blk = pairing_block(d.pair, d.chbar.space, 1);
    const Subspace ctop = Subspace::span_rows(dimn, kernel_basis(g1blk));
    const Subspace cone = Subspace::span_rows(d.chbar.space.dim(1), kernel_basis(g1blk.transpose()));
    out.c_top_dim = ctop.dim();
    out.c1_zero = (cone.dim() == 0);
    const RatMatrix lpow = power_block(d.chbar.space, d.chbar.L, 1, n - 1);
    out.l_injective = (rank(lpow) == d.chbar.space.dim(1));
    {
        const Subspace lim = Subspace::span_rows(dimn, image_basis(lpow));
        out.direct_sum = (ctop.dim() + lim.dim() == dimn && ctop.sum(lim).dim() == dimn);
    }
    const Subspace bn = family_at(d.F2, d.chbar.space, n);
    const Subspace bc = bn.intersect(ctop);
    out.bc_dim = bc.dim();
    out.quot = present_subquotient(bc, Subspace::full(dimn));
    const int qdim = out.quot.section.cols();

    // alpha2: image of B^n in the quotient
    out.alpha2 = out.quot.proj * bn.basis().transpose();
    // alpha0: the image of c1(L0)^n, normalized against the G0 presentation
    const int g0n = pc.g.G0.mod.space.dim(n);
    out.alpha0 = RatMatrix(qdim, g0n);
    if (g0n > 0) {
        if (g0n != 1)
            throw HypothesisError("zero_cycle_decomposition: top cohomology classes must be a line");
        const RatMatrix l0n = dd.c1_L0n;
        const RatMatrix in_g0 = map_block(pc.g.G0.proj, d.chbar.space, pc.g.G0.mod.space, n) * l0n;
        if (in_g0.is_zero())
            throw HypothesisError("zero_cycle_decomposition: c1(L0)^n projects to zero");
        const Rat scale = Rat(1) / in_g0.at(0, 0);
        const RatMatrix v = out.quot.proj * l0n.scaled(scale);
        for (int r = 0; r < qdim; ++r) out.alpha0.at(r, 0) = v.at(r, 0);
    }
    // alpha1: sections of G1^n perpendicular to the divisor-side alpha0 image
    const int g1n = pc.g.G1.mod.space.dim(n);
    out.alpha1 = RatMatrix(qdim, g1n);
    for (int t = 0; t < g1n; ++t) {
        RatMatrix e(g1n, 1);
        e.at(t, 0) = Rat(1);
        const RatMatrix base = map_block(pc.g.G1.incl, pc.g.G1.mod.space, d.chbar.space, n) * e;
        // unknown u over B^n: <alpha0_div(x_j), base + B^T u> = 0 for all j
        const int na = dd.alpha0.cols();
        RatMatrix sys(na, bn.dim());
        RatMatrix rhs(na, 1);
        for (int j = 0; j < na; ++j) {
            const RatMatrix aj = dd.alpha0.col_matrix(j);
            const RatMatrix row =
                aj.transpose() * pairing_block(d.pair, d.chbar.space, 1) * bn.basis().transpose();
            for (int c = 0; c < bn.dim(); ++c) sys.at(j, c) = row.at(0, c);
            rhs.at(j, 0) = -(aj.transpose() * pairing_block(d.pair, d.chbar.space, 1) * base).at(0, 0);
        }
        auto sol = solve(sys, rhs);
        if (!sol)
            throw HypothesisError("zero_cycle_decomposition: no perpendicular lift exists");
        // uniqueness modulo B^n ∩ C^n: the kernel of sys must inject into BC
        for (int r = 0; r < sol->kernel.rows(); ++r) {
            const RatMatrix kv = bn.basis().transpose() * sol->kernel.row_matrix(r).transpose();
            if (!bc.contains(kv))
                throw HypothesisError("zero_cycle_decomposition: lift not unique modulo B ∩ C");
        }
        const RatMatrix v = out.quot.proj * (base + bn.basis().transpose() * sol->particular);
        for (int r = 0; r < qdim; ++r) out.alpha1.at(r, t) = v.at(r, 0);
    }
    return out;
}

RatMatrix zero_cycle_l_lift(const ArakelovData& d, const DivisorDecomposition& dd,
                            const ZeroCycleDecomposition& zd, const RatMatrix& xi_coords) {
    const int n = d.n;
    if (xi_coords.cols() != 1 || xi_coords.rows() != d.K.chk.space.dim(n))
        throw ContractError("zero_cycle_l_lift: bad coordinates");
    const PieceCoords pc = piece_coords(d);
    const ChkSplit ks = chk_split(d);
    const RatMatrix xcl = map_block(d.K.cls, d.K.chk.space, d.K.ak.space, n) * xi_coords;
    const RatMatrix x0 =
        xi_coords - map_block(ks.sigma, d.K.ak.space, d.K.chk.space, n) * xcl;
    RatMatrix g0(pc.g.G0.mod.space.dim(n), 1);
    if (g0.rows() > 0) g0 = pc.t0inv.at(n) * xcl;
    RatMatrix g1(pc.g.G1.mod.space.dim(n), 1);
    if (g1.rows() > 0) {
        auto sol = solve_matrix(pc.t1.at(n), x0);
        if (!sol) throw HypothesisError("zero_cycle_l_lift: trivial component outside G1");
        g1 = *sol;
    }
    const RatMatrix lift = zd.alpha0 * g0 + zd.alpha1 * g1;
    // re-verify: perpendicular to every divisor-side cohomology lift
    // (the pairing is well-defined on the quotient: B ∩ C lies in its null space)
    const RatMatrix rep_lift = zd.quot.section * lift;
    for (int j = 0; j < dd.alpha0.cols(); ++j) {
        const RatMatrix aj = dd.alpha0.col_matrix(j);
        const RatMatrix v = aj.transpose() * pairing_block(d.pair, d.chbar.space, 1) * rep_lift;
        if (!v.is_zero())
            throw HypothesisError("zero_cycle_l_lift: lift not perpendicular to the divisor "
                                  "cohomology lifts");
    }
    return lift;
}

bool local_index_check(const SpecialFiberData& slice) {
    const GradedSpace lo = colow_space(slice);
    const int an = lo.dim(1);
    RatMatrix fiber(an, 1);
    for (int i = 0; i < an; ++i) fiber.at(i, 0) = Rat(1);
    return local_index_check(slice, fiber);
}

bool local_index_check(const SpecialFiberData& slice, const RatMatrix& fiber_class) {
    validate_special_fiber(slice);
    const GradedSpace lo = colow_space(slice);
    const GradedMap llo = colow_operator(slice);
    const int n = slice.n;
    const int an = lo.dim(1);
    if (an == 0) return true;
    if (fiber_class.rows() != an || fiber_class.cols() != 1)
        throw ContractError("local_index_check: bad fiber class shape");
    RatMatrix pairn(slice.A_high.dim(n), slice.A_low.dim(n));
    if (auto it = slice.pair.find(n); it != slice.pair.end()) pairn = it->second;
    // form (x, L^(n-1)x) on dimension-n classes
    const RatMatrix q = power_block(lo, llo, 1, n - 1).transpose() *
                        map_block(slice.conn, lo, slice.A_high, n).transpose() * pairn;
    if (!q.is_symmetric()) return false;
    const Signature sig = signature(q);
    if (sig.plus != 0) return false;
    const Subspace ker = Subspace::span_rows(an, kernel_basis(q));
    const Subspace line = Subspace::span_rows(an, fiber_class.transpose());
    return ker == line;
}

} // namespace lefkit
