#include "lefkit/splitting.hpp"

#include "lefkit/errors.hpp"

#include <set>

namespace lefkit {

void validate_exact_sequence(const ExactSequence& seq) {
    validate_module(seq.U, "U");
    validate_module(seq.V, "V");
    validate_module(seq.W, "W");
    if (seq.eps.shift != 0 || seq.eta.shift != 0)
        throw ContractError("exact sequence: eps and eta must have degree 0");
    validate_map(seq.eps, seq.U.space, seq.V.space, "eps");
    validate_map(seq.eta, seq.V.space, seq.W.space, "eta");
    std::set<int> degs;
    for (auto& [d, n] : seq.U.space.dims) degs.insert(d);
    for (auto& [d, n] : seq.V.space.dims) degs.insert(d);
    for (auto& [d, n] : seq.W.space.dims) degs.insert(d);
    for (int d : degs) {
        const RatMatrix e = map_block(seq.eps, seq.U.space, seq.V.space, d);
        const RatMatrix h = map_block(seq.eta, seq.V.space, seq.W.space, d);
        if (rank(e) != seq.U.space.dim(d))
            throw ContractError("exact sequence: eps not injective at degree " + std::to_string(d));
        if (rank(h) != seq.W.space.dim(d))
            throw ContractError("exact sequence: eta not surjective at degree " + std::to_string(d));
        const Subspace im = Subspace::span_rows(seq.V.space.dim(d), image_basis(e));
        const Subspace ker = Subspace::span_rows(seq.V.space.dim(d), kernel_basis(h));
        if (im != ker)
            throw ContractError("exact sequence: Im(eps) != Ker(eta) at degree " + std::to_string(d));
    }
    for (int d : degs) {
        // L-equivariance of eps and eta
        const RatMatrix lhs_e = map_block(seq.eps, seq.U.space, seq.V.space, d + 1) *
                                map_block(seq.U.L, seq.U.space, seq.U.space, d);
        const RatMatrix rhs_e = map_block(seq.V.L, seq.V.space, seq.V.space, d) *
                                map_block(seq.eps, seq.U.space, seq.V.space, d);
        if (lhs_e != rhs_e)
            throw ContractError("exact sequence: eps does not commute with L at degree " +
                                std::to_string(d));
        const RatMatrix lhs_h = map_block(seq.eta, seq.V.space, seq.W.space, d + 1) *
                                map_block(seq.V.L, seq.V.space, seq.V.space, d);
        const RatMatrix rhs_h = map_block(seq.W.L, seq.W.space, seq.W.space, d) *
                                map_block(seq.eta, seq.V.space, seq.W.space, d);
        if (lhs_h != rhs_h)
            throw ContractError("exact sequence: eta does not commute with L at degree " +
                                std::to_string(d));
    }
}

std::vector<GradedMap> hom_space(const LefschetzModule& w, const LefschetzModule& u) {
    validate_module(w, "W");
    validate_module(u, "U");
    // unknowns: entries of phi_d (dim U^d x dim W^d) for all shared degrees
    std::map<int, int> offset;
    int nvars = 0;
    for (auto& [d, wd] : w.space.dims) {
        const int ud = u.space.dim(d);
        if (wd == 0 || ud == 0) continue;
        offset[d] = nvars;
        nvars += wd * ud;
    }
    auto var = [&](int d, int r, int c) {
        // phi_d entry (r, c); r < dim U^d, c < dim W^d
        return offset.at(d) + r * w.space.dim(d) + c;
    };
    std::vector<std::vector<Rat>> rows;
    std::set<int> degs;
    for (auto& [d, n] : w.space.dims) degs.insert(d);
    for (int d : degs) {
        const int wd = w.space.dim(d), wd1 = w.space.dim(d + 1);
        const int ud = u.space.dim(d), ud1 = u.space.dim(d + 1);
        if (wd == 0 || ud1 == 0) continue;
        const RatMatrix lw = map_block(w.L, w.space, w.space, d);
        const RatMatrix lu = map_block(u.L, u.space, u.space, d);
        // (phi_{d+1} L_W - L_U phi_d) entry (i, j) = 0
        for (int i = 0; i < ud1; ++i)
            for (int j = 0; j < wd; ++j) {
                std::vector<Rat> row(nvars, Rat(0));
                if (wd1 > 0 && ud1 > 0 && offset.count(d + 1))
                    for (int k = 0; k < wd1; ++k)
                        if (!lw.at(k, j).is_zero()) row[var(d + 1, i, k)] += lw.at(k, j);
                if (ud > 0 && offset.count(d))
                    for (int k = 0; k < ud; ++k)
                        if (!lu.at(i, k).is_zero()) row[var(d, k, j)] -= lu.at(i, k);
                bool nonzero = false;
                for (auto& x : row)
                    if (!x.is_zero()) { nonzero = true; break; }
                if (nonzero) rows.push_back(std::move(row));
            }
    }
    RatMatrix sys = rows.empty() ? RatMatrix(0, nvars) : RatMatrix::from_rows(rows);
    const RatMatrix ker = kernel_basis(sys);
    std::vector<GradedMap> basis;
    const int kdim = nvars == 0 ? 0 : ker.rows();
    for (int b = 0; b < kdim; ++b) {
        GradedMap phi;
        phi.shift = 0;
        for (auto& [d, off] : offset) {
            RatMatrix blockm(u.space.dim(d), w.space.dim(d));
            for (int r = 0; r < blockm.rows(); ++r)
                for (int c = 0; c < blockm.cols(); ++c)
                    blockm.at(r, c) = ker.at(b, var(d, r, c));
            set_block(phi, d, blockm);
        }
        basis.push_back(std::move(phi));
    }
    return basis;
}

namespace {

void require_hl(const LefschetzModule& m, const std::string& name) {
    const auto rep = check_hard_lefschetz(m);
    if (!rep.holds) {
        std::string degs;
        for (int d : rep.failures) degs += " " + std::to_string(d);
        throw HypothesisError("hard Lefschetz fails on " + name + " at degree(s)" + degs);
    }
}

} // namespace

GradedMap two_step_lift(const ExactSequence& seq) {
    validate_exact_sequence(seq);
    const int n = seq.W.n;
    if (seq.U.n != n + 1)
        throw HypothesisError("two_step_lift: center mismatch, need U.n = W.n + 1 (got U.n=" +
                              std::to_string(seq.U.n) + ", W.n=" + std::to_string(n) + ")");
    require_hl(seq.U, "U");
    require_hl(seq.W, "W");

    // primitive parts of W and their canonical lifts inside Ker(L^{n+1-2i}|V^i)
    std::map<int, RatMatrix> lift; // degree i -> columns lifting W^i_0 basis
    std::map<int, Subspace> wprim;
    for (auto& [i, wd] : seq.W.space.dims) {
        if (wd == 0 || 2 * i > n) continue;
        const Subspace w0 = Subspace::span_rows(wd, kernel_basis(power_block(seq.W.space, seq.W.L, i, n + 1 - 2 * i)));
        if (w0.dim() == 0) continue;
        const RatMatrix kv = kernel_basis(power_block(seq.V.space, seq.V.L, i, n + 1 - 2 * i));
        const RatMatrix eta_i = map_block(seq.eta, seq.V.space, seq.W.space, i);
        // solve (eta restricted to V^i_0) c = w for each primitive basis vector
        const RatMatrix restricted = eta_i * kv.transpose();
        RatMatrix cols(seq.V.space.dim(i), 0);
        for (int t = 0; t < w0.dim(); ++t) {
            auto sol = solve(restricted, w0.basis().row_matrix(t).transpose());
            if (!sol || sol->kernel.rows() != 0)
                throw HypothesisError("two_step_lift: primitive lifting not unique at degree " +
                                      std::to_string(i));
            cols = cols.hstack(kv.transpose() * sol->particular);
        }
        wprim.emplace(i, w0);
        lift.emplace(i, cols);
    }

    // extend L-linearly over the Lefschetz decomposition of W
    GradedMap sigma;
    sigma.shift = 0;
    for (auto& [d, wd] : seq.W.space.dims) {
        if (wd == 0) continue;
        RatMatrix expansion(wd, 0), target(seq.V.space.dim(d), 0);
        for (auto& [j, w0] : wprim) {
            if (j > d || d > n - j) continue;
            expansion = expansion.hstack(power_block(seq.W.space, seq.W.L, j, d - j) *
                                         w0.basis().transpose());
            target = target.hstack(power_block(seq.V.space, seq.V.L, j, d - j) * lift.at(j));
        }
        auto inv = inverse(expansion);
        if (!inv)
            throw HypothesisError("two_step_lift: Lefschetz expansion of W fails at degree " +
                                  std::to_string(d));
        set_block(sigma, d, target * *inv);
    }

    // exact postconditions
    const GradedMap etasigma = compose(seq.eta, sigma, seq.W.space, seq.V.space, seq.W.space);
    if (!map_equal(etasigma, identity_map(seq.W.space), seq.W.space, seq.W.space))
        throw HypothesisError("two_step_lift: section property failed");
    const GradedMap ls = compose(seq.V.L, sigma, seq.W.space, seq.V.space, seq.V.space);
    GradedMap sl = compose(sigma, seq.W.L, seq.W.space, seq.W.space, seq.V.space);
    sl.shift = 1;
    if (!map_equal(ls, sl, seq.W.space, seq.V.space))
        throw HypothesisError("two_step_lift: lift is not L-linear");
    return sigma;
}

LambdaSplit lambda_equivariant_split(const ExactSequence& seq) {
    validate_exact_sequence(seq);
    const int n = seq.W.n;
    if (seq.U.n != n + 2 || seq.V.n != n + 1)
        throw HypothesisError("lambda_equivariant_split: center mismatch, need centers (n+2)/2, "
                              "(n+1)/2, n/2");
    require_hl(seq.U, "U");
    require_hl(seq.V, "V");
    require_hl(seq.W, "W");

    // primitive data: alpha_i lifts W^i_0 into V^i_0, beta_i solves
    // L^{n+1-2i} alpha_i(x) = (n+1-2i) eps L^{n-2i} beta_i(x)
    std::map<int, Subspace> wprim;
    std::map<int, RatMatrix> alpha0cols, beta0cols;
    for (auto& [i, wd] : seq.W.space.dims) {
        if (wd == 0 || 2 * i > n) continue;
        const Subspace w0 = Subspace::span_rows(wd, kernel_basis(power_block(seq.W.space, seq.W.L, i, n + 1 - 2 * i)));
        if (w0.dim() == 0) continue;
        const RatMatrix kv = kernel_basis(power_block(seq.V.space, seq.V.L, i, n + 2 - 2 * i));
        const RatMatrix eta_i = map_block(seq.eta, seq.V.space, seq.W.space, i);
        const RatMatrix restricted = eta_i * kv.transpose();
        RatMatrix acols(seq.V.space.dim(i), 0), bcols(seq.U.space.dim(i + 1), 0);
        const Rat scalar(static_cast<long>(n + 1 - 2 * i));
        const RatMatrix eps_hi = map_block(seq.eps, seq.U.space, seq.V.space, n + 1 - i);
        const RatMatrix pow_u = power_block(seq.U.space, seq.U.L, i + 1, n - 2 * i);
        const RatMatrix beta_sys = (eps_hi * pow_u).scaled(scalar);
        for (int t = 0; t < w0.dim(); ++t) {
            auto asol = solve(restricted, w0.basis().row_matrix(t).transpose());
            if (!asol || asol->kernel.rows() != 0)
                throw HypothesisError("lambda_equivariant_split: primitive lift not unique at degree " +
                                      std::to_string(i));
            const RatMatrix av = kv.transpose() * asol->particular;
            const RatMatrix rhs = power_block(seq.V.space, seq.V.L, i, n + 1 - 2 * i) * av;
            auto bsol = solve(beta_sys, rhs);
            if (!bsol || bsol->kernel.rows() != 0)
                throw HypothesisError("lambda_equivariant_split: beta equation not uniquely solvable "
                                      "at degree " + std::to_string(i));
            acols = acols.hstack(av);
            bcols = bcols.hstack(bsol->particular);
        }
        wprim.emplace(i, w0);
        alpha0cols.emplace(i, acols);
        beta0cols.emplace(i, bcols);
    }

    // assemble alpha and beta over the Lefschetz decomposition of W:
    //   alpha(L^k x) = L^k alpha_i(x) - k eps L^{k-1} beta_i(x)
    //   beta(L^k x)  = L^k beta_i(x)
    GradedMap alpha, beta;
    alpha.shift = 0;
    beta.shift = 1;
    for (auto& [d, wd] : seq.W.space.dims) {
        if (wd == 0) continue;
        RatMatrix expansion(wd, 0);
        RatMatrix atarget(seq.V.space.dim(d), 0), btarget(seq.U.space.dim(d + 1), 0);
        for (auto& [j, w0] : wprim) {
            if (j > d || d > n - j) continue;
            const int k = d - j;
            expansion = expansion.hstack(power_block(seq.W.space, seq.W.L, j, k) * w0.basis().transpose());
            RatMatrix acol = power_block(seq.V.space, seq.V.L, j, k) * alpha0cols.at(j);
            if (k > 0) {
                const RatMatrix corr = map_block(seq.eps, seq.U.space, seq.V.space, d) *
                                       (power_block(seq.U.space, seq.U.L, j + 1, k - 1) * beta0cols.at(j));
                acol = acol - corr.scaled(Rat(static_cast<long>(k)));
            }
            atarget = atarget.hstack(acol);
            btarget = btarget.hstack(power_block(seq.U.space, seq.U.L, j + 1, k) * beta0cols.at(j));
        }
        auto inv = inverse(expansion);
        if (!inv)
            throw HypothesisError("lambda_equivariant_split: Lefschetz expansion of W fails at degree " +
                                  std::to_string(d));
        set_block(alpha, d, atarget * *inv);
        set_block(beta, d, btarget * *inv);
    }

    // exact postconditions of the construction
    const GradedMap etaalpha = compose(seq.eta, alpha, seq.W.space, seq.V.space, seq.W.space);
    if (!map_equal(etaalpha, identity_map(seq.W.space), seq.W.space, seq.W.space))
        throw HypothesisError("lambda_equivariant_split: section property failed");
    {
        const GradedMap la = compose(seq.V.L, alpha, seq.W.space, seq.V.space, seq.V.space);
        GradedMap al = compose(alpha, seq.W.L, seq.W.space, seq.W.space, seq.V.space);
        al.shift = 1;
        GradedMap eb = compose(seq.eps, beta, seq.W.space, seq.U.space, seq.V.space);
        const GradedMap rhs = map_add(al, eb, seq.W.space, seq.V.space);
        if (!map_equal(la, rhs, seq.W.space, seq.V.space))
            throw HypothesisError("lambda_equivariant_split: L·alpha = alpha·L + eps·beta failed");
    }
    for (auto& [d, wd] : seq.W.space.dims) {
        if (wd == 0) continue;
        const RatMatrix b = map_block(beta, seq.W.space, seq.U.space, d);
        if (b.rows() != b.cols() || rank(b) != wd)
            throw HypothesisError("lambda_equivariant_split: beta not bijective at degree " +
                                  std::to_string(d));
    }
    {
        const GradedMap lam_v = lambda_operator(seq.V);
        const GradedMap lam_w = lambda_operator(seq.W);
        const GradedMap lhs = compose(lam_v, alpha, seq.W.space, seq.V.space, seq.V.space);
        const GradedMap rhs = compose(alpha, lam_w, seq.W.space, seq.W.space, seq.V.space);
        if (!map_equal(lhs, rhs, seq.W.space, seq.V.space))
            throw HypothesisError("lambda_equivariant_split: section is not Lambda-linear");
    }
    return LambdaSplit{std::move(alpha), std::move(beta)};
}

void validate_filtered(const FilteredLefschetzModule& f) {
    validate_module(f.V, "V");
    for (auto& [d, s] : f.F2) {
        if (s.ambient() != f.V.space.dim(d))
            throw ContractError("F2: ambient mismatch at degree " + std::to_string(d));
        const Subspace f1 = family_at(f.F1, f.V.space, d);
        if (!f1.contains(s))
            throw ContractError("filtration: F2 not contained in F1 at degree " + std::to_string(d));
    }
    for (auto& [d, s] : f.F1)
        if (s.ambient() != f.V.space.dim(d))
            throw ContractError("F1: ambient mismatch at degree " + std::to_string(d));
    // L-stability of both steps (throws ContractError)
    LefschetzModule v = f.V;
    sub_presentation(v, f.F1, 0);
    sub_presentation(v, f.F2, 0);
}

GradedPieces graded_pieces(const FilteredLefschetzModule& f) {
    validate_filtered(f);
    if (f.V.space.total() == 0) {
        GradedPieces g;
        g.G0.mod.L.shift = g.G1.mod.L.shift = g.G2.mod.L.shift = 1;
        return g;
    }
    const int n = f.V.n - 1;
    if (n < 0) throw HypothesisError("graded_pieces: V must have center (n+1)/2 with n >= 0");
    GradedPieces g;
    g.G0 = quotient_presentation(f.V, f.F1, n);
    g.G1 = subquotient_presentation(f.V, f.F2, f.F1, n + 1);
    g.G2 = sub_presentation(f.V, f.F2, n + 2);
    require_hl(f.V, "V");
    require_hl(g.G0.mod, "G0 (center n/2)");
    require_hl(g.G1.mod, "G1 (center (n+1)/2)");
    require_hl(g.G2.mod, "G2 (center (n+2)/2)");
    return g;
}

ThreeStepSplitting three_step_split(const FilteredLefschetzModule& f) {
    const GradedPieces g = graded_pieces(f);
    ThreeStepSplitting out;
    out.beta.shift = 1;
    if (f.V.space.total() == 0) return out;
    const int n = f.V.n - 1;
    out.alpha2 = g.G2.incl;

    // (a) split off G1 inside F1 by the unique L-linear lifting
    const Presented f1m = sub_presentation(f.V, f.F1, n + 1);
    std::map<int, Subspace> f2_in_f1;
    for (auto& [d, dimv] : f.V.space.dims) {
        const Subspace f2d = family_at(f.F2, f.V.space, d);
        if (f2d.dim() == 0) continue;
        const RatMatrix rows = f2d.basis() * map_block(f1m.proj, f.V.space, f1m.mod.space, d).transpose();
        f2_in_f1.emplace(d, Subspace::span_rows(f1m.mod.space.dim(d), rows));
    }
    const Presented u_a = sub_presentation(f1m.mod, f2_in_f1, n + 2);
    ExactSequence seq_a{u_a.mod, f1m.mod, g.G1.mod, u_a.incl,
                        compose(g.G1.proj, f1m.incl, f1m.mod.space, f.V.space, g.G1.mod.space)};
    const GradedMap sigma_a = two_step_lift(seq_a);
    out.alpha1 = compose(f1m.incl, sigma_a, g.G1.mod.space, f1m.mod.space, f.V.space);

    // (b) the unique L-linear lifting G0 -> V/F2
    const Presented q2 = quotient_presentation(f.V, f.F2, n + 1);
    std::map<int, Subspace> f1_in_q2;
    for (auto& [d, dimv] : f.V.space.dims) {
        const Subspace f1d = family_at(f.F1, f.V.space, d);
        if (f1d.dim() == 0) continue;
        const RatMatrix rows = f1d.basis() * map_block(q2.proj, f.V.space, q2.mod.space, d).transpose();
        f1_in_q2.emplace(d, Subspace::span_rows(q2.mod.space.dim(d), rows));
    }
    const Presented u_b = sub_presentation(q2.mod, f1_in_q2, n + 1);
    ExactSequence seq_b{u_b.mod, q2.mod, g.G0.mod, u_b.incl,
                        compose(g.G0.proj, q2.incl, q2.mod.space, f.V.space, g.G0.mod.space)};
    const GradedMap v_lift = two_step_lift(seq_b);

    // (c) Vt = preimage of Im(v_lift) in V; V = alpha1(G1) ⊕ Vt
    std::map<int, Subspace> vt;
    for (auto& [d, dimv] : f.V.space.dims) {
        const RatMatrix vcols = map_block(q2.incl, q2.mod.space, f.V.space, d) *
                                map_block(v_lift, g.G0.mod.space, q2.mod.space, d);
        RatMatrix rows = family_at(f.F2, f.V.space, d).basis().vstack(vcols.transpose());
        vt.emplace(d, Subspace::span_rows(dimv, rows));
    }
    const Presented vtm = sub_presentation(f.V, vt, n + 1);
    std::map<int, Subspace> f2_in_vt;
    for (auto& [d, dimv] : f.V.space.dims) {
        const Subspace f2d = family_at(f.F2, f.V.space, d);
        if (f2d.dim() == 0) continue;
        const RatMatrix rows = f2d.basis() * map_block(vtm.proj, f.V.space, vtm.mod.space, d).transpose();
        f2_in_vt.emplace(d, Subspace::span_rows(vtm.mod.space.dim(d), rows));
    }
    const Presented u_c = sub_presentation(vtm.mod, f2_in_vt, n + 2);
    ExactSequence seq_c{u_c.mod, vtm.mod, g.G0.mod, u_c.incl,
                        compose(g.G0.proj, vtm.incl, vtm.mod.space, f.V.space, g.G0.mod.space)};
    const LambdaSplit ls = lambda_equivariant_split(seq_c);
    out.alpha0 = compose(vtm.incl, ls.alpha, g.G0.mod.space, vtm.mod.space, f.V.space);
    // beta back into G2 coordinates
    const GradedMap beta_amb =
        compose(vtm.incl, compose(u_c.incl, ls.beta, g.G0.mod.space, u_c.mod.space, vtm.mod.space),
                g.G0.mod.space, vtm.mod.space, f.V.space);
    out.beta = compose(g.G2.proj, beta_amb, g.G0.mod.space, f.V.space, g.G2.mod.space);
    return out;
}

bool verify_block_form(const FilteredLefschetzModule& f, const ThreeStepSplitting& s) {
    const GradedPieces g = graded_pieces(f);
    if (f.V.space.total() == 0) return true;
    const GradedMap lam_v = lambda_operator(f.V);
    const GradedMap lam0 = lambda_operator(g.G0.mod);
    const GradedMap lam1 = lambda_operator(g.G1.mod);
    const GradedMap lam2 = lambda_operator(g.G2.mod);

    std::map<int, RatMatrix> a, ainv; // assembled [alpha0|alpha1|alpha2] per degree
    for (auto& [d, dimv] : f.V.space.dims) {
        const RatMatrix m = map_block(s.alpha0, g.G0.mod.space, f.V.space, d)
                                .hstack(map_block(s.alpha1, g.G1.mod.space, f.V.space, d))
                                .hstack(map_block(s.alpha2, g.G2.mod.space, f.V.space, d));
        if (m.rows() != m.cols()) return false;
        auto inv = inverse(m);
        if (!inv) return false;
        a.emplace(d, m);
        ainv.emplace(d, *inv);
    }
    auto blockmat = [&](int d, const RatMatrix& b00, const RatMatrix& b11, const RatMatrix& b22,
                        const RatMatrix& corner, bool corner_low, int tshift) -> RatMatrix {
        // rows from degree d+tshift pieces, cols from degree d pieces
        const int r0 = g.G0.mod.space.dim(d + tshift), r1 = g.G1.mod.space.dim(d + tshift),
                  r2 = g.G2.mod.space.dim(d + tshift);
        const int c0 = g.G0.mod.space.dim(d), c1 = g.G1.mod.space.dim(d), c2 = g.G2.mod.space.dim(d);
        RatMatrix m(r0 + r1 + r2, c0 + c1 + c2);
        auto put = [&](int ro, int co, const RatMatrix& blk) {
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j) m.at(ro + i, co + j) = blk.at(i, j);
        };
        put(0, 0, b00);
        put(r0, c0, b11);
        put(r0 + r1, c0 + c1, b22);
        if (corner_low) put(r0 + r1, 0, corner); // beta in the (G2, G0) slot
        else put(0, c0 + c1, corner);            // beta^{-1} in the (G0, G2) slot
        return m;
    };

    for (auto& [d, dimv] : f.V.space.dims) {
        // L conjugated
        {
            const RatMatrix lhs_amb = map_block(f.V.L, f.V.space, f.V.space, d) * a.at(d);
            auto itn = ainv.find(d + 1);
            // pieces at a degree outside V's support are all zero-dimensional
            const RatMatrix lhs =
                itn != ainv.end() ? itn->second * lhs_amb : RatMatrix(0, a.at(d).cols());
            const RatMatrix expected = blockmat(
                d, map_block(g.G0.mod.L, g.G0.mod.space, g.G0.mod.space, d),
                map_block(g.G1.mod.L, g.G1.mod.space, g.G1.mod.space, d),
                map_block(g.G2.mod.L, g.G2.mod.space, g.G2.mod.space, d),
                map_block(s.beta, g.G0.mod.space, g.G2.mod.space, d), true, 1);
            if (lhs != expected) return false;
        }
        // Lambda conjugated; beta^{-1} block
        {
            const RatMatrix lhs_amb = map_block(lam_v, f.V.space, f.V.space, d) * a.at(d);
            auto itn = ainv.find(d - 1);
            if (itn == ainv.end()) {
                if (!lhs_amb.is_zero()) return false;
            } else {
                const RatMatrix lhs = itn->second * lhs_amb;
                const RatMatrix bprev = map_block(s.beta, g.G0.mod.space, g.G2.mod.space, d - 1);
                RatMatrix binv(g.G0.mod.space.dim(d - 1), g.G2.mod.space.dim(d));
                if (!bprev.empty()) {
                    auto bi = inverse(bprev);
                    if (!bi) return false;
                    binv = *bi;
                } else if (g.G2.mod.space.dim(d) != 0 || g.G0.mod.space.dim(d - 1) != 0) {
                    return false; // beta must be bijective degreewise
                }
                const RatMatrix expected = blockmat(
                    d, map_block(lam0, g.G0.mod.space, g.G0.mod.space, d),
                    map_block(lam1, g.G1.mod.space, g.G1.mod.space, d),
                    map_block(lam2, g.G2.mod.space, g.G2.mod.space, d), binv, false, -1);
                if (lhs != expected) return false;
            }
        }
    }
    return true;
}

} // namespace lefkit
