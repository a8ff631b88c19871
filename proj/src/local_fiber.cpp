#include "lefkit/local_fiber.hpp"

#include "lefkit/errors.hpp"

#include <set>

namespace lefkit {

GradedSpace colow_space(const SpecialFiberData& f) {
    GradedSpace s;
    for (auto& [d, dim] : f.A_low.dims) s.set(f.n + 1 - d, dim);
    return s;
}

GradedMap colow_operator(const SpecialFiberData& f) {
    GradedMap l;
    l.shift = 1;
    for (auto& [d, b] : f.L_low.blocks) l.blocks[f.n + 1 - d] = b;
    return l;
}

namespace {

LefschetzModule high_module(const SpecialFiberData& f, int n) {
    return LefschetzModule{f.A_high, f.L_high, n};
}

RatMatrix pair_at(const SpecialFiberData& f, int p) {
    const int r = f.A_high.dim(p), c = f.A_low.dim(p);
    auto it = f.pair.find(p);
    if (it == f.pair.end()) return RatMatrix(r, c);
    if (it->second.rows() != r || it->second.cols() != c)
        throw ContractError("fiber pair: block shape mismatch at degree " + std::to_string(p));
    return it->second;
}

std::set<int> high_degrees(const SpecialFiberData& f) {
    std::set<int> degs;
    for (auto& [p, dim] : f.A_high.dims) degs.insert(p);
    for (auto& [p, dim] : colow_space(f).dims) degs.insert(p);
    return degs;
}

} // namespace

void validate_special_fiber(const SpecialFiberData& f) {
    if (f.n < 0) throw ContractError("special fiber: n must be non-negative");
    if (f.L_high.shift != 1) throw ContractError("special fiber: L_high must have degree +1");
    if (f.L_low.shift != -1) throw ContractError("special fiber: L_low must have degree -1");
    if (f.conn.shift != 0) throw ContractError("special fiber: conn must have degree 0");
    validate_map(f.L_high, f.A_high, f.A_high, "L_high");
    validate_map(f.L_low, f.A_low, f.A_low, "L_low");
    const GradedSpace lo = colow_space(f);
    validate_map(f.conn, lo, f.A_high, "conn");
    for (auto& [p, b] : f.pair)
        if (b.rows() != f.A_high.dim(p) || b.cols() != f.A_low.dim(p))
            throw ContractError("fiber pair: block shape mismatch at degree " + std::to_string(p));
    if (f.cap_pair.total != f.n)
        throw ContractError("special fiber: cap pairing must have total n");
    validate_pairing(f.cap_pair, f.A_high, "cap_pair");
    if (!pairing_symmetric(f.cap_pair, f.A_high))
        throw ContractError("special fiber: cap pairing not symmetric");
    if (!check_adjoint(f.cap_pair, f.L_high, f.A_high))
        throw ContractError("special fiber: cap pairing not L-adjoint");

    const GradedMap llo = colow_operator(f);
    for (int p : high_degrees(f)) {
        // conn commutes with L under the regrading
        const RatMatrix lhs = map_block(f.conn, lo, f.A_high, p + 1) * map_block(llo, lo, lo, p);
        const RatMatrix rhs = map_block(f.L_high, f.A_high, f.A_high, p) * map_block(f.conn, lo, f.A_high, p);
        if (lhs != rhs)
            throw ContractError("special fiber: conn does not commute with L at degree " +
                                std::to_string(p));
        // self-adjointness of conn under the evaluation pairing
        const RatMatrix a = map_block(f.conn, lo, f.A_high, p).transpose() * pair_at(f, p);
        const RatMatrix b =
            map_block(f.conn, lo, f.A_high, f.n + 1 - p).transpose() * pair_at(f, f.n + 1 - p);
        if (a != b.transpose())
            throw ContractError("special fiber: conn is not self-adjoint at degree " +
                                std::to_string(p));
        // evaluation pairing is compatible with the two L actions
        const RatMatrix pl = map_block(f.L_high, f.A_high, f.A_high, p).transpose() * pair_at(f, p + 1);
        const RatMatrix pr = pair_at(f, p) * map_block(f.L_low, f.A_low, f.A_low, p + 1);
        if (pl != pr)
            throw ContractError("special fiber: pairing not compatible with L at degree " +
                                std::to_string(p));
        // cap form kills Im(conn) on both sides (lift-independence of the
        // nearby pairing)
        const RatMatrix capl =
            map_block(f.conn, lo, f.A_high, p).transpose() * pairing_block(f.cap_pair, f.A_high, p);
        if (!capl.is_zero())
            throw ContractError("special fiber: cap pairing does not kill Im(conn) at degree " +
                                std::to_string(p));
    }
}

VanishingNearby vanishing_nearby(const SpecialFiberData& f) {
    validate_special_fiber(f);
    const GradedSpace lo = colow_space(f);
    VanishingNearby out;
    for (int p : high_degrees(f)) {
        const RatMatrix cb = map_block(f.conn, lo, f.A_high, p);
        if (cb.cols() == 0 && cb.rows() == 0) continue;
        const RatMatrix img = image_basis(cb);
        RatMatrix pre(cb.cols(), img.rows());
        for (int t = 0; t < img.rows(); ++t) {
            auto s = solve(cb, img.row_matrix(t).transpose());
            if (!s) throw ContractError("vanishing_nearby: image basis has no preimage");
            for (int r = 0; r < cb.cols(); ++r) pre.at(r, t) = s->particular.at(r, 0);
        }
        if (f.A_high.dim(p) > 0) out.phi.emplace(p, Subspace::span_rows(f.A_high.dim(p), img));
        out.phi_preimage.emplace(p, std::move(pre));
        if (f.A_low.dim(f.n + 1 - p) > 0)
            out.psi_low.emplace(p, Subspace::span_rows(lo.dim(p), kernel_basis(cb)));
    }
    const LefschetzModule high = high_module(f, f.n);
    out.phi_mod = sub_presentation(high, out.phi, f.n + 1);
    out.psi = quotient_presentation(high, out.phi, f.n);
    // exactness bookkeeping: dim phi^p + dim psi^p = dim A^p by construction

    // induced pairings
    out.phi_pair.total = f.n + 1;
    for (auto& [p, dim] : out.phi_mod.mod.space.dims) {
        if (dim == 0) continue;
        auto itp = out.phi_preimage.find(f.n + 1 - p);
        if (itp == out.phi_preimage.end() || itp->second.cols() == 0) continue;
        const RatMatrix g = out.phi.at(p).basis() * pair_at(f, p) * itp->second;
        set_pairing_block(out.phi_pair, p, g);
    }
    out.psi_pair.total = f.n;
    for (auto& [p, dim] : out.psi.mod.space.dims) {
        if (dim == 0) continue;
        const RatMatrix sp = map_block(out.psi.incl, out.psi.mod.space, f.A_high, p);
        const RatMatrix sq = map_block(out.psi.incl, out.psi.mod.space, f.A_high, f.n - p);
        set_pairing_block(out.psi_pair, p,
                          sp.transpose() * pairing_block(f.cap_pair, f.A_high, p) * sq);
    }
    // harmonic complement when available
    try {
        const HarmonicData h = harmonic_split(f);
        out.phi_low_harmonic = h.phi_low;
    } catch (const HypothesisError&) {
        // Lefschetz predicates fail on this instance; leave the field empty
    }
    return out;
}

ConjectureReport conjecture_report(const SpecialFiberData& f) {
    validate_special_fiber(f);
    VanishingNearby vn = vanishing_nearby(f);
    ConjectureReport rep;
    rep.nd = true;
    for (int p : high_degrees(f)) {
        const RatMatrix b = pair_at(f, p);
        if (b.rows() != b.cols() || rank(b) != b.rows()) rep.nd = false;
    }
    rep.lef_phi = check_hard_lefschetz(vn.phi_mod.mod).holds;
    rep.lef_psi = check_hard_lefschetz(vn.psi.mod).holds;
    if (rep.lef_phi) {
        try {
            rep.hod_phi = hodge_index_check(vn.phi_mod.mod, vn.phi_pair).verdict;
        } catch (const HypothesisError&) {
            rep.hod_phi = false;
        }
    }
    if (rep.lef_psi) {
        try {
            rep.hod_psi = hodge_index_check(vn.psi.mod, vn.psi_pair).verdict;
        } catch (const HypothesisError&) {
            rep.hod_psi = false;
        }
    }
    return rep;
}

HarmonicData harmonic_split(const SpecialFiberData& f) {
    validate_special_fiber(f);
    const GradedSpace lo = colow_space(f);
    const LefschetzModule high = high_module(f, f.n);
    // rebuild the phi/psi presentations without the harmonic attempt
    std::map<int, Subspace> phi;
    for (int p : high_degrees(f)) {
        const RatMatrix cb = map_block(f.conn, lo, f.A_high, p);
        if (f.A_high.dim(p) > 0) phi.emplace(p, Subspace::span_rows(f.A_high.dim(p), image_basis(cb)));
    }
    const Presented phi_mod = sub_presentation(high, phi, f.n + 1);
    const Presented psi = quotient_presentation(high, phi, f.n);
    {
        const auto hphi = check_hard_lefschetz(phi_mod.mod);
        const auto hpsi = check_hard_lefschetz(psi.mod);
        if (!hphi.holds || !hpsi.holds)
            throw HypothesisError("harmonic_split: Lefschetz predicate fails on the " +
                                  std::string(!hphi.holds ? "vanishing" : "nearby") + " part");
    }
    ExactSequence seq{phi_mod.mod, high, psi.mod, phi_mod.incl, psi.proj};
    HarmonicData out;
    out.sigma = two_step_lift(seq);
    for (auto& [p, dim] : psi.mod.space.dims) {
        if (dim == 0) continue;
        const RatMatrix cols = map_block(out.sigma, psi.mod.space, f.A_high, p);
        out.harmonic.emplace(p, Subspace::span_rows(f.A_high.dim(p), cols.transpose()));
    }
    // complement property: harmonic ⊕ phi = A^p, exactly
    for (auto& [p, dimp] : f.A_high.dims) {
        Subspace h = out.harmonic.count(p) ? out.harmonic.at(p) : Subspace(dimp);
        Subspace ph = phi.count(p) ? phi.at(p) : Subspace(dimp);
        if (h.dim() + ph.dim() != dimp || h.sum(ph).dim() != dimp)
            throw HypothesisError("harmonic_split: harmonic part does not complement Im(conn)");
    }
    // phi_low = orthogonal complement of the harmonic forms inside A_low
    for (int p : high_degrees(f)) {
        const int q = f.n + 1 - p;
        if (lo.dim(p) == 0) continue;
        Subspace h = out.harmonic.count(q) ? out.harmonic.at(q) : Subspace(f.A_high.dim(q));
        const Subspace perp = right_perp(h, pair_at(f, q));
        out.phi_low.emplace(p, perp);
        // A_low must split as Ker(conn) ⊕ phi_low under the predicates
        const RatMatrix cb = map_block(f.conn, lo, f.A_high, p);
        const Subspace ker = Subspace::span_rows(lo.dim(p), kernel_basis(cb));
        if (ker.dim() + perp.dim() != lo.dim(p) || ker.sum(perp).dim() != lo.dim(p))
            throw HypothesisError("harmonic_split: dual decomposition fails at degree " +
                                  std::to_string(p));
    }
    return out;
}

void validate_local_model(const LocalModel& m) {
    validate_special_fiber(m.fiber);
    const GradedSpace lo = colow_space(m.fiber);
    if (m.i_star.shift != 0 || m.omega.shift != 0 || m.eta_restrict.shift != 0)
        throw ContractError("local model: i_star, omega, eta_restrict must have degree 0");
    validate_map(m.i_star, lo, m.Zhat, "i_star");
    validate_map(m.omega, m.Zhat, m.fiber.A_high, "omega");
    validate_map(m.eta_restrict, m.Zhat, m.Zeta, "eta_restrict");
    std::set<int> degs;
    for (auto& [p, d] : m.Zhat.dims) degs.insert(p);
    for (int p : high_degrees(m.fiber)) degs.insert(p);
    for (auto& [p, b] : m.zpair)
        if (b.rows() != m.Zhat.dim(p) || b.cols() != m.Zhat.dim(m.fiber.n + 1 - p))
            throw ContractError("zpair: block shape mismatch at degree " + std::to_string(p));
    auto zpair_at = [&](int p) -> RatMatrix {
        auto it = m.zpair.find(p);
        if (it != m.zpair.end()) return it->second;
        return RatMatrix(m.Zhat.dim(p), m.Zhat.dim(m.fiber.n + 1 - p));
    };
    for (int p : degs) {
        // omega ∘ i_star = conn
        const RatMatrix lhs = map_block(m.omega, m.Zhat, m.fiber.A_high, p) *
                              map_block(m.i_star, lo, m.Zhat, p);
        if (lhs != map_block(m.fiber.conn, lo, m.fiber.A_high, p))
            throw ContractError("local model: omega∘i_star != conn at degree " + std::to_string(p));
        // projection formula <i_star a, z> = <omega z, a>, with a paired
        // through the evaluation block at the complementary codimension
        const int q = m.fiber.n + 1 - p;
        const RatMatrix pf = map_block(m.i_star, lo, m.Zhat, p).transpose() * zpair_at(p);
        RatMatrix pairq(m.fiber.A_high.dim(q), m.fiber.A_low.dim(q));
        if (auto it = m.fiber.pair.find(q); it != m.fiber.pair.end()) pairq = it->second;
        const RatMatrix ph =
            map_block(m.omega, m.Zhat, m.fiber.A_high, q).transpose() * pairq;
        if (pf != ph.transpose())
            throw ContractError("local model: projection formula fails at degree " +
                                std::to_string(p));
        // Ker(eta_restrict) = Im(i_star)
        const Subspace ker = Subspace::span_rows(
            m.Zhat.dim(p), kernel_basis(map_block(m.eta_restrict, m.Zhat, m.Zeta, p)));
        const Subspace img = Subspace::span_rows(
            m.Zhat.dim(p), image_basis(map_block(m.i_star, lo, m.Zhat, p)));
        if (ker != img)
            throw ContractError("local model: Ker(eta_restrict) != Im(i_star) at degree " +
                                std::to_string(p));
        // symmetry of the intersection pairing
        if (zpair_at(p) != zpair_at(q).transpose())
            throw ContractError("local model: zpair not symmetric at degree " + std::to_string(p));
    }
}

namespace {

RatMatrix zpair_block(const LocalModel& m, int p) {
    auto it = m.zpair.find(p);
    if (it != m.zpair.end()) return it->second;
    return RatMatrix(m.Zhat.dim(p), m.Zhat.dim(m.fiber.n + 1 - p));
}

void require_cycle_shape(const LocalModel& m, const Cycle& z, const std::string& who) {
    if (z.coords.cols() != 1 || z.coords.rows() != m.Zhat.dim(z.p))
        throw ContractError(who + ": cycle coordinates do not match Zhat at degree " +
                            std::to_string(z.p));
}

} // namespace

bool is_admissible(const LocalModel& m, const Cycle& z) {
    validate_local_model(m);
    require_cycle_shape(m, z, "is_admissible");
    const HarmonicData h = harmonic_split(m.fiber);
    const RatMatrix w = map_block(m.omega, m.Zhat, m.fiber.A_high, z.p) * z.coords;
    const Subspace hs =
        h.harmonic.count(z.p) ? h.harmonic.at(z.p) : Subspace(m.fiber.A_high.dim(z.p));
    return hs.contains(w);
}

LiftResult arakelov_lift(const LocalModel& m, const Cycle& z_zar) {
    validate_local_model(m);
    require_cycle_shape(m, z_zar, "arakelov_lift");
    const GradedSpace lo = colow_space(m.fiber);
    const int p = z_zar.p, q = m.fiber.n + 1 - p;
    const int gl = lo.dim(p);
    const HarmonicData h = harmonic_split(m.fiber);
    const ConjectureReport rep = conjecture_report(m.fiber);
    const bool smooth = (map_block(m.fiber.conn, lo, m.fiber.A_high, p).is_zero() && gl == 0);
    if (!smooth && !rep.nd)
        throw HypothesisError("arakelov_lift: perfect-pairing predicate fails");
    const RatMatrix w = map_block(m.omega, m.Zhat, m.fiber.A_high, z_zar.p) * z_zar.coords;
    const Subspace hs = h.harmonic.count(p) ? h.harmonic.at(p) : Subspace(m.fiber.A_high.dim(p));
    // unknowns (g, c): conn g - H^T c = -w  and  <harmonic_q, g> = 0
    const RatMatrix cb = map_block(m.fiber.conn, lo, m.fiber.A_high, p);
    const RatMatrix hb = hs.basis().transpose(); // A^p x h
    RatMatrix top = cb.hstack(hb.scaled(Rat(-1)));
    const Subspace hq = h.harmonic.count(q) ? h.harmonic.at(q) : Subspace(m.fiber.A_high.dim(q));
    RatMatrix pairq(m.fiber.A_high.dim(q), m.fiber.A_low.dim(q));
    if (auto it = m.fiber.pair.find(q); it != m.fiber.pair.end()) pairq = it->second;
    RatMatrix orth = (hq.basis() * pairq).hstack(RatMatrix(hq.dim(), hs.dim()));
    const RatMatrix sys = top.vstack(orth);
    const RatMatrix rhs = (-w).vstack(RatMatrix(hq.dim(), 1));
    auto sol = solve(sys, rhs);
    if (!sol) throw HypothesisError("arakelov_lift: no admissible normalized correction exists");
    // uniqueness of the g-component
    for (int r = 0; r < sol->kernel.rows(); ++r) {
        bool gpart = false;
        for (int c = 0; c < gl; ++c)
            if (!sol->kernel.at(r, c).is_zero()) gpart = true;
        if (gpart)
            throw HypothesisError("arakelov_lift: correction not unique (predicates fail)");
    }
    RatMatrix g(gl, 1);
    for (int r = 0; r < gl; ++r) g.at(r, 0) = sol->particular.at(r, 0);
    LiftResult res;
    res.g = g;
    res.cycle.p = p;
    res.cycle.coords = z_zar.coords + map_block(m.i_star, lo, m.Zhat, p) * g;
    // postcondition: the lift is admissible
    const RatMatrix wlift = map_block(m.omega, m.Zhat, m.fiber.A_high, p) * res.cycle.coords;
    if (!hs.contains(wlift))
        throw HypothesisError("arakelov_lift: lifted curvature not harmonic");
    return res;
}

Rat local_height(const LocalModel& m, const Cycle& z, const Cycle& w_zar) {
    require_cycle_shape(m, z, "local_height");
    require_cycle_shape(m, w_zar, "local_height");
    if (z.p + w_zar.p != m.fiber.n + 1)
        throw ContractError("local_height: degrees must sum to n+1");
    const LiftResult zl = arakelov_lift(m, z);
    const RatMatrix v = zl.cycle.coords.transpose() * zpair_block(m, z.p) * w_zar.coords;
    return v.at(0, 0);
}

LiftResult bb_lift(const LocalModel& m, const Cycle& z_zar) {
    validate_local_model(m);
    require_cycle_shape(m, z_zar, "bb_lift");
    const GradedSpace lo = colow_space(m.fiber);
    const int p = z_zar.p;
    const HarmonicData h = harmonic_split(m.fiber);
    const RatMatrix w = map_block(m.omega, m.Zhat, m.fiber.A_high, p) * z_zar.coords;
    // split w = conn(a) + harmonic; the harmonic component must vanish
    const RatMatrix cb = map_block(m.fiber.conn, lo, m.fiber.A_high, p);
    const Subspace hs = h.harmonic.count(p) ? h.harmonic.at(p) : Subspace(m.fiber.A_high.dim(p));
    const RatMatrix sys = cb.hstack(hs.basis().transpose());
    auto dec = solve(sys, w);
    if (!dec) throw ContractError("bb_lift: curvature not in Im(conn) + harmonic");
    for (int r = 0; r < hs.dim(); ++r)
        if (!dec->particular.at(cb.cols() + r, 0).is_zero())
            throw HypothesisError("bb_lift: not homologically trivial (nonzero harmonic curvature)");
    // solve conn(g) = -w with g in the harmonic-orthogonal complement phi_low
    const Subspace pl = h.phi_low.count(p) ? h.phi_low.at(p) : Subspace(lo.dim(p));
    auto sol = solve(cb * pl.basis().transpose(), -w);
    if (!sol || sol->kernel.rows() != 0)
        throw HypothesisError("bb_lift: normalized correction not unique");
    const RatMatrix g = pl.basis().transpose() * sol->particular;
    LiftResult res;
    res.g = g;
    res.cycle.p = p;
    res.cycle.coords = z_zar.coords + map_block(m.i_star, lo, m.Zhat, p) * g;
    const RatMatrix wlift = map_block(m.omega, m.Zhat, m.fiber.A_high, p) * res.cycle.coords;
    if (!wlift.is_zero()) throw HypothesisError("bb_lift: curvature of the lift is not zero");
    return res;
}

} // namespace lefkit
