#include "lefkit/models.hpp"

#include "lefkit/errors.hpp"

#include <set>

namespace lefkit {

ProjectiveSpaceModel projective_space_module(int n) {
    if (n < 0) throw ContractError("projective_space_module: n must be non-negative");
    ProjectiveSpaceModel out;
    out.module.n = n;
    out.module.L.shift = 1;
    for (int d = 0; d <= n; ++d) out.module.space.set(d, 1);
    for (int d = 0; d < n; ++d) out.module.L.blocks[d] = RatMatrix::identity(1);
    out.pairing.total = n;
    for (int d = 0; d <= n; ++d) out.pairing.blocks[d] = RatMatrix::identity(1);
    return out;
}

void validate_reduction_graph(const ReductionGraph& g) {
    const int r = g.components;
    if (r < 1) throw ContractError("reduction graph: at least one component required");
    if (g.intersection.rows() != r || g.intersection.cols() != r)
        throw ContractError("reduction graph: intersection matrix must be r x r");
    if (!g.intersection.is_symmetric())
        throw ContractError("reduction graph: intersection matrix must be symmetric");
    if (static_cast<int>(g.l_degrees.size()) != r)
        throw ContractError("reduction graph: need one polarization degree per component");
    Rat degsum(0);
    for (const auto& v : g.l_degrees) {
        if (v.sign() <= 0) throw ContractError("reduction graph: polarization degrees must be positive");
        degsum += v;
    }
    if (degsum.sign() <= 0) throw ContractError("reduction graph: total degree must be positive");
    bool nonzero = false;
    for (int i = 0; i < r; ++i) {
        Rat rowsum(0);
        for (int j = 0; j < r; ++j) {
            const Rat& e = g.intersection.at(i, j);
            if (e.raw().get_den() != 1)
                throw ContractError("reduction graph: intersection numbers must be integers");
            if (i != j && e.sign() < 0)
                throw ContractError("reduction graph: off-diagonal intersections must be >= 0");
            if (!e.is_zero()) nonzero = true;
            rowsum += e;
        }
        if (!rowsum.is_zero())
            throw ContractError("reduction graph: intersection matrix rows must sum to zero");
    }
    if (!nonzero && r > 1)
        throw ContractError("reduction graph: disconnected multi-component fiber (zero matrix)");
    if (!g.horizontal.empty()) {
        if (g.horizontal.rows() != r || g.horizontal.cols() != r || !g.horizontal.is_symmetric())
            throw ContractError("reduction graph: horizontal intersections must be symmetric r x r");
    }
}

GraphModel reduction_graph_model(const ReductionGraph& g) {
    validate_reduction_graph(g);
    const int r = g.components;
    GraphModel out;
    SpecialFiberData& f = out.fiber;
    f.n = 1;
    f.A_high.set(0, 1);
    f.A_high.set(1, r);
    f.A_low.set(0, 1);
    f.A_low.set(1, r);
    f.conn.shift = 0;
    set_block(f.conn, 1, g.intersection);
    f.L_high.shift = 1;
    RatMatrix dcol(r, 1), drow(1, r);
    for (int i = 0; i < r; ++i) {
        dcol.at(i, 0) = g.l_degrees[i];
        drow.at(0, i) = g.l_degrees[i];
    }
    set_block(f.L_high, 0, dcol);
    f.L_low.shift = -1;
    set_block(f.L_low, 1, drow);
    f.pair[0] = RatMatrix::identity(1);
    f.pair[1] = RatMatrix::identity(r);
    f.cap_pair.total = 1;
    RatMatrix ones_row(1, r), ones_col(r, 1);
    for (int i = 0; i < r; ++i) {
        ones_row.at(0, i) = Rat(1);
        ones_col.at(i, 0) = Rat(1);
    }
    set_pairing_block(f.cap_pair, 0, ones_row);
    set_pairing_block(f.cap_pair, 1, ones_col);
    validate_special_fiber(f);

    LocalModel& m = out.model;
    m.fiber = f;
    m.Zhat.set(0, 1);
    m.Zhat.set(1, 2 * r);
    m.Zhat.set(2, 1);
    m.i_star.shift = 0;
    {
        RatMatrix vert(2 * r, r);
        for (int i = 0; i < r; ++i) vert.at(r + i, i) = Rat(1);
        set_block(m.i_star, 1, vert);
        set_block(m.i_star, 2, RatMatrix::identity(1));
    }
    m.omega.shift = 0;
    set_block(m.omega, 0, RatMatrix::identity(1));
    {
        RatMatrix w(r, 2 * r);
        for (int i = 0; i < r; ++i) w.at(i, i) = Rat(1); // section i meets component i once
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) w.at(i, r + j) = g.intersection.at(i, j);
        set_block(m.omega, 1, w);
    }
    m.Zeta.set(0, 1);
    m.Zeta.set(1, r);
    m.eta_restrict.shift = 0;
    set_block(m.eta_restrict, 0, RatMatrix::identity(1));
    {
        RatMatrix e(r, 2 * r);
        for (int i = 0; i < r; ++i) e.at(i, i) = Rat(1);
        set_block(m.eta_restrict, 1, e);
    }
    {
        RatMatrix hor = g.horizontal.empty() ? RatMatrix(r, r) : g.horizontal;
        RatMatrix z1(2 * r, 2 * r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                z1.at(i, j) = hor.at(i, j);
                z1.at(r + i, r + j) = g.intersection.at(i, j);
            }
        for (int i = 0; i < r; ++i) {
            z1.at(i, r + i) = Rat(1);
            z1.at(r + i, i) = Rat(1);
        }
        m.zpair[1] = z1;
        m.zpair[0] = RatMatrix::identity(1);
        m.zpair[2] = RatMatrix::identity(1);
    }
    for (int i = 0; i < r; ++i) {
        Cycle sec;
        sec.p = 1;
        sec.coords = RatMatrix(2 * r, 1);
        sec.coords.at(i, 0) = Rat(1);
        m.cycles["comp" + std::to_string(i + 1)] = sec;
        Cycle vert;
        vert.p = 1;
        vert.coords = RatMatrix(2 * r, 1);
        vert.coords.at(r + i, 0) = Rat(1);
        m.cycles["vert" + std::to_string(i + 1)] = vert;
    }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            Cycle diff;
            diff.p = 1;
            diff.coords = RatMatrix(2 * r, 1);
            diff.coords.at(i, 0) = Rat(1);
            diff.coords.at(j, 0) = Rat(-1);
            m.cycles["diff" + std::to_string(i + 1) + std::to_string(j + 1)] = diff;
        }
    validate_local_model(m);
    return out;
}

void validate_strata(const StrataData& s) {
    if (s.n < 1) throw ContractError("strata: fiber dimension must be >= 1");
    if (s.components.empty()) throw ContractError("strata: at least one component required");
    if (s.component_pairs.size() != s.components.size())
        throw ContractError("strata: one pairing per component required");
    const int r = static_cast<int>(s.components.size());
    for (int i = 0; i < r; ++i) {
        validate_module(s.components[i], "component " + std::to_string(i));
        if (s.components[i].n != s.n)
            throw ContractError("strata: components must have center n/2");
        if (s.component_pairs[i].total != s.n)
            throw ContractError("strata: component pairings must have total n");
        validate_pairing(s.component_pairs[i], s.components[i].space, "component pairing");
    }
    for (const auto& ps : s.intersections) {
        if (ps.i < 0 || ps.j <= ps.i || ps.j >= r)
            throw ContractError("strata: bad intersection indices");
        validate_module(ps.module, "intersection stratum");
        if (ps.module.n != s.n - 1)
            throw ContractError("strata: intersection strata must have center (n-1)/2");
        if (ps.pairing.total != s.n - 1)
            throw ContractError("strata: intersection pairings must have total n-1");
        const auto& ci = s.components[ps.i];
        const auto& cj = s.components[ps.j];
        if (ps.res_i.shift != 0 || ps.res_j.shift != 0 || ps.gysin_i.shift != 1 ||
            ps.gysin_j.shift != 1)
            throw ContractError("strata: restriction maps have degree 0, Gysin maps degree +1");
        validate_map(ps.res_i, ci.space, ps.module.space, "res_i");
        validate_map(ps.res_j, cj.space, ps.module.space, "res_j");
        validate_map(ps.gysin_i, ps.module.space, ci.space, "gysin_i");
        validate_map(ps.gysin_j, ps.module.space, cj.space, "gysin_j");
        // L-equivariance and pairing adjointness, sidewise
        auto check_side = [&](const LefschetzModule& comp, const GradedPairing& cpair,
                              const GradedMap& res, const GradedMap& gy) {
            std::set<int> degs;
            for (auto& [p, dim] : comp.space.dims) degs.insert(p);
            for (auto& [p, dim] : ps.module.space.dims) degs.insert(p);
            for (int p : degs) {
                const RatMatrix a = map_block(ps.module.L, ps.module.space, ps.module.space, p) *
                                    map_block(res, comp.space, ps.module.space, p);
                const RatMatrix b = map_block(res, comp.space, ps.module.space, p + 1) *
                                    map_block(comp.L, comp.space, comp.space, p);
                if (a != b) throw ContractError("strata: restriction not L-equivariant");
                const RatMatrix c = map_block(comp.L, comp.space, comp.space, p + 1) *
                                    map_block(gy, ps.module.space, comp.space, p);
                const RatMatrix e = map_block(gy, ps.module.space, comp.space, p + 1) *
                                    map_block(ps.module.L, ps.module.space, ps.module.space, p);
                if (c != e) throw ContractError("strata: Gysin not L-equivariant");
                // <gy(b), a>_Y = <b, res(a)>_Y'
                const RatMatrix lhs = map_block(gy, ps.module.space, comp.space, p).transpose() *
                                      pairing_block(cpair, comp.space, p + 1);
                const RatMatrix rhs =
                    pairing_block(ps.pairing, ps.module.space, p) *
                    map_block(res, comp.space, ps.module.space, s.n - 1 - p);
                if (lhs != rhs) throw ContractError("strata: restriction and Gysin not adjoint");
            }
        };
        check_side(ci, s.component_pairs[ps.i], ps.res_i, ps.gysin_i);
        check_side(cj, s.component_pairs[ps.j], ps.res_j, ps.gysin_j);
    }
}

namespace {

struct Offsets {
    std::vector<int> start; // per component
    int total = 0;
};

Offsets comp_offsets(const StrataData& s, int p) {
    Offsets o;
    for (const auto& c : s.components) {
        o.start.push_back(o.total);
        o.total += c.space.dim(p);
    }
    return o;
}

Offsets pair_offsets(const StrataData& s, int p) {
    Offsets o;
    for (const auto& ps : s.intersections) {
        o.start.push_back(o.total);
        o.total += ps.module.space.dim(p);
    }
    return o;
}

void place(RatMatrix& m, int r0, int c0, const RatMatrix& blk, const Rat& scale) {
    for (int i = 0; i < blk.rows(); ++i)
        for (int j = 0; j < blk.cols(); ++j) m.at(r0 + i, c0 + j) += scale * blk.at(i, j);
}

} // namespace

SpecialFiberData bgs_assemble(const StrataData& s) {
    validate_strata(s);
    const int n = s.n;
    std::set<int> degs;
    for (const auto& c : s.components)
        for (auto& [p, dim] : c.space.dims) degs.insert(p);

    // kernel presentation of A^p and cokernel presentation of A_d
    std::map<int, Subspace> ker;       // inside the component sum at degree p
    std::map<int, DegPresentation> coker; // of the component sum at cohomological degree p
    for (int p : degs) {
        const Offsets co = comp_offsets(s, p);
        const Offsets po = pair_offsets(s, p);
        RatMatrix res(po.total, co.total);
        int row = 0;
        for (std::size_t k = 0; k < s.intersections.size(); ++k) {
            const auto& ps = s.intersections[k];
            const int rows = ps.module.space.dim(p);
            place(res, po.start[k], co.start[ps.i],
                  map_block(ps.res_i, s.components[ps.i].space, ps.module.space, p), Rat(1));
            place(res, po.start[k], co.start[ps.j],
                  map_block(ps.res_j, s.components[ps.j].space, ps.module.space, p), Rat(-1));
            row += rows;
        }
        ker.emplace(p, Subspace::span_rows(co.total, kernel_basis(res)));
        // Gysin differences into cohomological degree p land from degree p-1
        const Offsets po1 = pair_offsets(s, p - 1);
        RatMatrix gy(co.total, po1.total);
        for (std::size_t k = 0; k < s.intersections.size(); ++k) {
            const auto& ps = s.intersections[k];
            place(gy, co.start[ps.i], po1.start[k],
                  map_block(ps.gysin_i, ps.module.space, s.components[ps.i].space, p - 1), Rat(1));
            place(gy, co.start[ps.j], po1.start[k],
                  map_block(ps.gysin_j, ps.module.space, s.components[ps.j].space, p - 1), Rat(-1));
        }
        const Subspace im = Subspace::span_rows(co.total, image_basis(gy));
        coker.emplace(p, present_subquotient(im, Subspace::full(co.total)));
    }

    SpecialFiberData f;
    f.n = n;
    for (int p : degs) {
        f.A_high.set(p, ker.at(p).dim());
        f.A_low.set(n - p, coker.at(p).section.cols()); // dimension grading
    }
    f.conn.shift = 0;
    f.L_high.shift = 1;
    f.L_low.shift = -1;
    f.cap_pair.total = n;

    // the connection map: conn(a)_k = sum over strata containing k of
    // gy_k(res_other(a_other) - res_k(a_k)), computed on representatives
    for (int p : degs) {
        if (!coker.count(p - 1) && !ker.count(p)) continue;
        const Offsets co_src = comp_offsets(s, p - 1);
        const Offsets co_dst = comp_offsets(s, p);
        RatMatrix cmat(co_dst.total, co_src.total);
        for (std::size_t k = 0; k < s.intersections.size(); ++k) {
            const auto& ps = s.intersections[k];
            const RatMatrix ri =
                map_block(ps.res_i, s.components[ps.i].space, ps.module.space, p - 1);
            const RatMatrix rj =
                map_block(ps.res_j, s.components[ps.j].space, ps.module.space, p - 1);
            const RatMatrix gi =
                map_block(ps.gysin_i, ps.module.space, s.components[ps.i].space, p - 1);
            const RatMatrix gj =
                map_block(ps.gysin_j, ps.module.space, s.components[ps.j].space, p - 1);
            // contribution to component j: gy_j(res_i(a_i) - res_j(a_j))
            place(cmat, co_dst.start[ps.j], co_src.start[ps.i], gj * ri, Rat(1));
            place(cmat, co_dst.start[ps.j], co_src.start[ps.j], gj * rj, Rat(-1));
            // contribution to component i: gy_i(res_j(a_j) - res_i(a_i))
            place(cmat, co_dst.start[ps.i], co_src.start[ps.j], gi * rj, Rat(1));
            place(cmat, co_dst.start[ps.i], co_src.start[ps.i], gi * ri, Rat(-1));
        }
        if (!coker.count(p - 1) || !ker.count(p)) {
            if (!cmat.is_zero())
                throw ContractError("bgs_assemble: connection map escapes the presentation");
            continue;
        }
        // the square must commute: cmat kills the Gysin image (well-defined on
        // the cokernel) and lands inside the kernel presentation
        const DegPresentation& src = coker.at(p - 1);
        const Subspace& dst = ker.at(p);
        const Offsets po2 = pair_offsets(s, p - 2);
        {
            RatMatrix gy(co_src.total, po2.total);
            for (std::size_t k = 0; k < s.intersections.size(); ++k) {
                const auto& ps = s.intersections[k];
                place(gy, co_src.start[ps.i], po2.start[k],
                      map_block(ps.gysin_i, ps.module.space, s.components[ps.i].space, p - 2), Rat(1));
                place(gy, co_src.start[ps.j], po2.start[k],
                      map_block(ps.gysin_j, ps.module.space, s.components[ps.j].space, p - 2), Rat(-1));
            }
            if (!(cmat * gy).is_zero())
                throw ContractError("bgs_assemble: connection not well-defined on the cokernel");
        }
        RatMatrix block(dst.dim(), src.section.cols());
        for (int c = 0; c < src.section.cols(); ++c) {
            const RatMatrix img = cmat * src.section.col_matrix(c);
            auto coords = dst.coordinates(img);
            if (!coords)
                throw ContractError("bgs_assemble: connection image violates the kernel condition");
            for (int rr = 0; rr < dst.dim(); ++rr) block.at(rr, c) = coords->at(rr, 0);
        }
        set_block(f.conn, p, block);
    }

    // polarization action on both presentations
    for (int p : degs) {
        const Offsets co = comp_offsets(s, p);
        const Offsets cn = comp_offsets(s, p + 1);
        RatMatrix ltot(cn.total, co.total);
        for (int i = 0; i < static_cast<int>(s.components.size()); ++i)
            place(ltot, cn.start[i], co.start[i],
                  map_block(s.components[i].L, s.components[i].space, s.components[i].space, p),
                  Rat(1));
        if (ker.count(p) && ker.at(p).dim() > 0 && ker.count(p + 1)) {
            const Subspace& dst = ker.at(p + 1);
            RatMatrix block(dst.dim(), ker.at(p).dim());
            for (int c = 0; c < ker.at(p).dim(); ++c) {
                const RatMatrix img = ltot * ker.at(p).basis().row_matrix(c).transpose();
                auto coords = dst.coordinates(img);
                if (!coords)
                    throw ContractError("bgs_assemble: L does not preserve the kernel");
                for (int rr = 0; rr < dst.dim(); ++rr) block.at(rr, c) = coords->at(rr, 0);
            }
            set_block(f.L_high, p, block);
        }
        if (coker.count(p) && coker.count(p + 1)) {
            // on homology: dimension d = n - p maps to d - 1, i.e. p + 1
            const RatMatrix block = coker.at(p + 1).proj * ltot * coker.at(p).section;
            set_block(f.L_low, n - p, block);
        }
    }

    // pairings
    for (int p : degs) {
        if (!ker.count(p)) continue;
        const Offsets co = comp_offsets(s, p);
        const Offsets cq = comp_offsets(s, n - p);
        RatMatrix ptot(co.total, cq.total);
        for (int i = 0; i < static_cast<int>(s.components.size()); ++i)
            place(ptot, co.start[i], cq.start[i],
                  pairing_block(s.component_pairs[i], s.components[i].space, p), Rat(1));
        if (coker.count(n - p)) {
            const RatMatrix blk = ker.at(p).basis() * ptot * coker.at(n - p).section;
            if (!blk.empty() && !blk.is_zero()) f.pair[p] = blk;
            else if (!blk.empty()) f.pair[p] = blk; // keep explicit zero blocks of right shape
        }
        if (ker.count(n - p)) {
            const RatMatrix cap = ker.at(p).basis() * ptot * ker.at(n - p).basis().transpose();
            set_pairing_block(f.cap_pair, p, cap);
        }
    }
    validate_special_fiber(f);
    return f;
}

namespace {

// structured module in primitive coordinates: basis (j, t, k) with degree
// j + k, grouped by ascending j within each degree
struct Structured {
    LefschetzModule mod;
    GradedPairing pair;
    std::map<int, int> prim; // primitive multiplicity per degree
    bool flipped = false;
};

Structured build_structured(Rng& rng, int n, int max_prim, bool plant_flip) {
    Structured out;
    out.mod.n = n;
    out.mod.L.shift = 1;
    out.pair.total = n;
    std::map<int, int> prim;
    for (int j = 0; 2 * j <= n; ++j) prim[j] = rng.uniform(0, max_prim);
    if (max_prim > 0) {
        // avoid the degenerate empty draw when the bounds allow content
        bool any = false;
        for (auto& [j, m] : prim) any = any || m > 0;
        if (!any) prim[0] = 1;
    }
    out.prim = prim;
    // dims and index layout
    auto layout = [&](int d) {
        std::vector<std::pair<int, int>> cols; // (j, t)
        for (auto& [j, m] : prim) {
            if (j > d || d > n - j) continue;
            for (int t = 0; t < m; ++t) cols.emplace_back(j, t);
        }
        return cols;
    };
    for (int d = 0; d <= n; ++d) out.mod.space.set(d, static_cast<int>(layout(d).size()));
    for (int d = 0; d < n; ++d) {
        const auto src = layout(d), dst = layout(d + 1);
        RatMatrix b(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (std::size_t c = 0; c < src.size(); ++c) {
            const auto [j, t] = src[c];
            if (d + 1 > n - j) continue; // string ends
            for (std::size_t rr = 0; rr < dst.size(); ++rr)
                if (dst[rr] == src[c]) b.at(static_cast<int>(rr), static_cast<int>(c)) = Rat(1);
        }
        set_block(out.mod.L, d, b);
    }
    // pairing: C_j = (-1)^j · SPD, with an optional planted sign flip
    std::map<int, RatMatrix> cj;
    std::vector<int> flippable;
    for (auto& [j, m] : prim) {
        if (m == 0) continue;
        cj[j] = rng.spd(m);
        if (j % 2 != 0) cj[j] = -cj[j];
        flippable.push_back(j);
    }
    if (plant_flip && !flippable.empty()) {
        // negate one primitive block; definiteness flips whenever it is nonempty
        const int j = flippable[rng.uniform(0, static_cast<int>(flippable.size()) - 1)];
        cj[j] = cj[j].scaled(Rat(-1));
        out.flipped = true;
    }
    for (int d = 0; d <= n; ++d) {
        const auto rowsl = layout(d), colsl = layout(n - d);
        RatMatrix b(static_cast<int>(rowsl.size()), static_cast<int>(colsl.size()));
        for (std::size_t rr = 0; rr < rowsl.size(); ++rr)
            for (std::size_t cc = 0; cc < colsl.size(); ++cc) {
                const auto [j1, t1] = rowsl[rr];
                const auto [j2, t2] = colsl[cc];
                if (j1 != j2) continue;
                b.at(static_cast<int>(rr), static_cast<int>(cc)) = cj.at(j1).at(t1, t2);
            }
        set_pairing_block(out.pair, d, b);
    }
    return out;
}

} // namespace

RandomModule random_lefschetz_module(Rng& rng, const RandomBounds& b, bool plant_flip) {
    const int n = rng.uniform(0, b.max_n);
    Structured st = build_structured(rng, n, b.max_prim_dim, plant_flip);
    RandomModule out;
    out.hodge_true = !st.flipped;
    out.module.n = n;
    out.module.L.shift = 1;
    out.module.space = st.mod.space;
    out.pairing.total = n;
    // random change of basis per degree
    std::map<int, RatMatrix> pmat, pinv;
    for (auto& [d, dim] : st.mod.space.dims) {
        RatMatrix p = rng.invertible(dim);
        pmat[d] = p;
        pinv[d] = *inverse(p);
    }
    auto pm = [&](int d) {
        auto it = pmat.find(d);
        return it != pmat.end() ? it->second : RatMatrix::identity(st.mod.space.dim(d));
    };
    auto pi = [&](int d) {
        auto it = pinv.find(d);
        return it != pinv.end() ? it->second : RatMatrix::identity(st.mod.space.dim(d));
    };
    for (auto& [d, dim] : st.mod.space.dims) {
        set_block(out.module.L, d, pm(d + 1) * map_block(st.mod.L, st.mod.space, st.mod.space, d) * pi(d));
        set_pairing_block(out.pairing, d,
                          pi(d).transpose() * pairing_block(st.pair, st.mod.space, d) * pi(n - d));
    }
    return out;
}

RandomFiltered random_filtered_instance(std::uint64_t seed, const RandomFilteredOptions& opt) {
    Rng rng(seed);
    const int n = rng.uniform(0, opt.bounds.max_n);
    Structured g0 = build_structured(rng, n, opt.bounds.max_prim_dim,
                                     opt.plant_hodge_flip && rng.flip());
    Structured g1 = build_structured(rng, n + 1, opt.bounds.max_prim_dim,
                                     opt.plant_hodge_flip && !g0.flipped && rng.flip());
    RandomFiltered out;
    out.hodge_true = !g0.flipped && !g1.flipped;

    // beta0: random L-automorphism of G0 (block scalars per primitive degree)
    std::map<int, RatMatrix> rj, rjinv;
    for (auto& [j, m] : g0.prim) {
        if (m == 0) continue;
        RatMatrix lo = RatMatrix::identity(m), up = RatMatrix::identity(m);
        for (int i = 0; i < m; ++i)
            for (int c = 0; c < i; ++c) {
                if (rng.flip()) lo.at(i, c) = rng.small_rat();
                if (rng.flip()) up.at(c, i) = rng.small_rat();
            }
        rj[j] = lo * up;
        rjinv[j] = *inverse(rj[j]);
    }
    auto layout0 = [&](int d) {
        std::vector<std::pair<int, int>> cols;
        for (auto& [j, m] : g0.prim) {
            if (j > d || d > n - j || m == 0) continue;
            for (int t = 0; t < m; ++t) cols.emplace_back(j, t);
        }
        return cols;
    };
    auto beta_block = [&](int d, bool invert) {
        const auto l = layout0(d);
        RatMatrix b(static_cast<int>(l.size()), static_cast<int>(l.size()));
        for (std::size_t cc = 0; cc < l.size(); ++cc)
            for (std::size_t rr = 0; rr < l.size(); ++rr) {
                const auto [j1, t1] = l[rr];
                const auto [j2, t2] = l[cc];
                if (j1 != j2) continue;
                const RatMatrix& m = invert ? rjinv.at(j1) : rj.at(j1);
                b.at(static_cast<int>(rr), static_cast<int>(cc)) = m.at(t1, t2);
            }
        return b;
    };

    // assemble V = G0 ⊕ G1 ⊕ G2 with G2 the +1 shift of G0
    FilteredLefschetzModule f;
    f.V.n = n + 1;
    f.V.L.shift = 1;
    auto dim0 = [&](int d) { return g0.mod.space.dim(d); };
    auto dim1 = [&](int d) { return g1.mod.space.dim(d); };
    auto dim2 = [&](int d) { return g0.mod.space.dim(d - 1); };
    for (int d = 0; d <= n + 2; ++d) {
        const int t = dim0(d) + dim1(d) + dim2(d);
        if (t > 0) f.V.space.set(d, t);
    }
    for (int d = 0; d <= n + 2; ++d) {
        const int r0 = dim0(d + 1), r1 = dim1(d + 1), r2 = dim2(d + 1);
        const int c0 = dim0(d), c1 = dim1(d), c2 = dim2(d);
        if ((r0 + r1 + r2) == 0 || (c0 + c1 + c2) == 0) continue;
        RatMatrix b(r0 + r1 + r2, c0 + c1 + c2);
        place(b, 0, 0, map_block(g0.mod.L, g0.mod.space, g0.mod.space, d), Rat(1));
        place(b, r0, c0, map_block(g1.mod.L, g1.mod.space, g1.mod.space, d), Rat(1));
        place(b, r0 + r1, c0 + c1, map_block(g0.mod.L, g0.mod.space, g0.mod.space, d - 1), Rat(1));
        place(b, r0 + r1, 0, beta_block(d, false), Rat(1));
        set_block(f.V.L, d, b);
    }
    GradedPairing pv;
    pv.total = n + 1;
    auto p02 = [&](int d) {
        // G0^d x G2^(n+1-d): p00_d · beta^{-1} at (n-d)
        return pairing_block(g0.pair, g0.mod.space, d) * beta_block(n - d, true);
    };
    for (int d = 0; d <= n + 2; ++d) {
        const int r0 = dim0(d), r1 = dim1(d), r2 = dim2(d);
        const int e = n + 1 - d;
        const int c0 = dim0(e), c1 = dim1(e), c2 = dim2(e);
        if ((r0 + r1 + r2) == 0 || (c0 + c1 + c2) == 0) continue;
        RatMatrix b(r0 + r1 + r2, c0 + c1 + c2);
        place(b, 0, c0 + c1, p02(d), Rat(1));
        place(b, r0, c0, pairing_block(g1.pair, g1.mod.space, d), Rat(1));
        place(b, r0 + r1, 0, p02(e).transpose(), Rat(1));
        set_pairing_block(pv, d, b);
    }
    // filtration in block coordinates
    for (int d = 0; d <= n + 2; ++d) {
        const int c0 = dim0(d), c1 = dim1(d), c2 = dim2(d);
        const int t = c0 + c1 + c2;
        if (t == 0) continue;
        RatMatrix f1rows(c1 + c2, t), f2rows(c2, t);
        for (int i = 0; i < c1 + c2; ++i) f1rows.at(i, c0 + i) = Rat(1);
        for (int i = 0; i < c2; ++i) f2rows.at(i, c0 + c1 + i) = Rat(1);
        if (c1 + c2 > 0) f.F1.emplace(d, Subspace::span_rows(t, f1rows));
        if (c2 > 0) f.F2.emplace(d, Subspace::span_rows(t, f2rows));
    }

    // random filtered change of basis (block lower triangular)
    std::map<int, RatMatrix> phi, phiinv;
    for (auto& [d, dimv] : f.V.space.dims) {
        const int c0 = dim0(d), c1 = dim1(d), c2 = dim2(d);
        RatMatrix m(dimv, dimv);
        place(m, 0, 0, rng.invertible(c0), Rat(1));
        place(m, c0, c0, rng.invertible(c1), Rat(1));
        place(m, c0 + c1, c0 + c1, rng.invertible(c2), Rat(1));
        for (int i = c0; i < dimv; ++i)
            for (int j = 0; j < c0; ++j)
                if (rng.flip()) m.at(i, j) = rng.small_rat();
        for (int i = c0 + c1; i < dimv; ++i)
            for (int j = c0; j < c0 + c1; ++j)
                if (rng.flip()) m.at(i, j) = rng.small_rat();
        phi[d] = m;
        phiinv[d] = *inverse(m);
    }
    auto ph = [&](int d) {
        auto it = phi.find(d);
        return it != phi.end() ? it->second : RatMatrix::identity(f.V.space.dim(d));
    };
    auto phin = [&](int d) {
        auto it = phiinv.find(d);
        return it != phiinv.end() ? it->second : RatMatrix::identity(f.V.space.dim(d));
    };
    FilteredLefschetzModule fc;
    fc.V.n = n + 1;
    fc.V.L.shift = 1;
    fc.V.space = f.V.space;
    for (auto& [d, dimv] : f.V.space.dims)
        set_block(fc.V.L, d, ph(d + 1) * map_block(f.V.L, f.V.space, f.V.space, d) * phin(d));
    GradedPairing pc;
    pc.total = n + 1;
    for (auto& [d, dimv] : f.V.space.dims)
        set_pairing_block(pc, d,
                          phin(d).transpose() * pairing_block(pv, f.V.space, d) *
                              phin(n + 1 - d));
    for (auto& [d, sub] : f.F1)
        fc.F1.emplace(d, Subspace::span_rows(sub.ambient(), (ph(d) * sub.basis().transpose()).transpose()));
    for (auto& [d, sub] : f.F2)
        fc.F2.emplace(d, Subspace::span_rows(sub.ambient(), (ph(d) * sub.basis().transpose()).transpose()));

    if (opt.break_pairing) {
        // damage orthogonality between F2 and F1 at the lowest eligible degree
        for (auto& [d, sub] : fc.F2) {
            const int e = n + 1 - d;
            const Subspace f1e = family_at(fc.F1, fc.V.space, e);
            if (sub.dim() == 0 || f1e.dim() == 0) continue;
            const RatMatrix v = sub.basis().row_matrix(0).transpose();
            const RatMatrix w = f1e.basis().row_matrix(0).transpose();
            RatMatrix gd = pairing_block(pc, fc.V.space, d) + v * w.transpose();
            RatMatrix ge = pairing_block(pc, fc.V.space, e) + w * v.transpose();
            set_pairing_block(pc, d, gd);
            set_pairing_block(pc, e, ge);
            break;
        }
    }
    out.filtered = std::move(fc);
    out.pairing = std::move(pc);
    return out;
}

ArakelovData arithmetic_surface_toy(const Rat& dk, const Rat& lsq, const RatMatrix& nt_gram,
                                    const std::vector<ReductionGraph>& fibers) {
    if (dk.sign() <= 0) throw ContractError("arithmetic_surface_toy: dk must be positive");
    if (!nt_gram.is_symmetric())
        throw ContractError("arithmetic_surface_toy: height Gram must be symmetric");
    const int r = nt_gram.rows();
    {
        const Signature sig = signature(nt_gram);
        if (sig.minus != r)
            throw ContractError("arithmetic_surface_toy: height Gram must be negative definite");
    }
    ArakelovData d;
    d.n = 1;
    d.chbar.n = 2;
    d.chbar.L.shift = 1;
    d.chbar.space.set(0, 1);
    d.chbar.space.set(1, 2 + r);
    d.chbar.space.set(2, 1);
    // degree-1 basis: (H = c1(L), E = X_eps, xi_1..xi_r)
    {
        RatMatrix l0(2 + r, 1);
        l0.at(0, 0) = Rat(1);
        set_block(d.chbar.L, 0, l0);
        RatMatrix l1(1, 2 + r);
        l1.at(0, 0) = lsq;
        l1.at(0, 1) = dk;
        set_block(d.chbar.L, 1, l1);
    }
    d.pair.total = 2;
    {
        d.pair.blocks[0] = RatMatrix::identity(1);
        d.pair.blocks[2] = RatMatrix::identity(1);
        RatMatrix g1(2 + r, 2 + r);
        g1.at(0, 0) = lsq;
        g1.at(0, 1) = dk;
        g1.at(1, 0) = dk;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) g1.at(2 + i, 2 + j) = nt_gram.at(i, j);
        d.pair.blocks[1] = g1;
    }
    {
        RatMatrix f1rows(1 + r, 2 + r);
        f1rows.at(0, 1) = Rat(1);
        for (int i = 0; i < r; ++i) f1rows.at(1 + i, 2 + i) = Rat(1);
        d.F1.emplace(1, Subspace::span_rows(2 + r, f1rows));
        d.F1.emplace(2, Subspace::full(1));
        RatMatrix f2row(1, 2 + r);
        f2row.at(0, 1) = Rat(1);
        d.F2.emplace(1, Subspace::span_rows(2 + r, f2row));
        d.F2.emplace(2, Subspace::full(1));
    }
    d.eps_op.shift = 1;
    {
        RatMatrix e0(2 + r, 1);
        e0.at(1, 0) = Rat(1);
        set_block(d.eps_op, 0, e0);
        RatMatrix e1(1, 2 + r);
        e1.at(0, 0) = dk;
        set_block(d.eps_op, 1, e1);
    }
    // generic fiber presentations
    d.K.chk.n = 1;
    d.K.chk.L.shift = 1;
    d.K.chk.space.set(0, 1);
    d.K.chk.space.set(1, 1 + r);
    {
        RatMatrix l0(1 + r, 1);
        l0.at(0, 0) = Rat(1);
        set_block(d.K.chk.L, 0, l0);
    }
    d.K.ak.n = 1;
    d.K.ak.L.shift = 1;
    d.K.ak.space.set(0, 1);
    d.K.ak.space.set(1, 1);
    set_block(d.K.ak.L, 0, RatMatrix::identity(1));
    d.K.gen_proj.shift = 0;
    set_block(d.K.gen_proj, 0, RatMatrix::identity(1));
    {
        RatMatrix gp(1 + r, 2 + r);
        gp.at(0, 0) = Rat(1);
        for (int i = 0; i < r; ++i) gp.at(1 + i, 2 + i) = Rat(1);
        set_block(d.K.gen_proj, 1, gp);
    }
    d.K.cls.shift = 0;
    set_block(d.K.cls, 0, RatMatrix::identity(1));
    {
        RatMatrix c1(1, 1 + r);
        c1.at(0, 0) = Rat(1);
        set_block(d.K.cls, 1, c1);
    }
    for (const auto& g : fibers) d.slices.push_back(reduction_graph_model(g).fiber);
    {
        Cycle xk;
        xk.p = 0;
        xk.coords = RatMatrix::identity(1);
        d.cycles["XK"] = xk;
        Cycle c1l;
        c1l.p = 1;
        c1l.coords = RatMatrix(1 + r, 1);
        c1l.coords.at(0, 0) = Rat(1);
        d.cycles["c1L"] = c1l;
        Cycle pt;
        pt.p = 1;
        pt.coords = RatMatrix(1 + r, 1);
        pt.coords.at(0, 0) = Rat(1) / dk;
        d.cycles["point"] = pt;
        for (int i = 0; i < r; ++i) {
            Cycle pic;
            pic.p = 1;
            pic.coords = RatMatrix(1 + r, 1);
            pic.coords.at(1 + i, 0) = Rat(1);
            d.cycles["pic" + std::to_string(i + 1)] = pic;
        }
    }
    validate_arakelov(d);
    return d;
}

} // namespace lefkit
