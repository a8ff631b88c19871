#include "lefkit/lefschetz.hpp"

#include "lefkit/errors.hpp"

#include <algorithm>
#include <set>

namespace lefkit {

void validate_module(const LefschetzModule& m, const std::string& name) {
    if (m.n < 0) throw ContractError(name + ": n must be non-negative");
    if (m.L.shift != 1) throw ContractError(name + ": L must have degree +1");
    for (auto& [d, dim] : m.space.dims)
        if (dim < 0) throw ContractError(name + ": negative dimension");
    validate_map(m.L, m.space, m.space, name + ".L");
}

Subspace family_at(const std::map<int, Subspace>& fam, const GradedSpace& v, int d) {
    auto it = fam.find(d);
    if (it == fam.end()) return Subspace(v.dim(d));
    if (it->second.ambient() != v.dim(d))
        throw ContractError("subspace family: ambient mismatch at degree " + std::to_string(d));
    return it->second;
}

HardLefschetzReport check_hard_lefschetz(const LefschetzModule& m) {
    validate_module(m);
    HardLefschetzReport rep;
    std::set<int> fail;
    const int n = m.n;
    std::set<int> centers;
    for (auto& [d, dim] : m.space.dims) {
        if (dim == 0) continue;
        centers.insert(2 * d <= n ? d : n - d);
    }
    for (int i : centers) {
        const int r = m.space.dim(n - i), c = m.space.dim(i);
        if (r != c) { fail.insert(i); continue; }
        const RatMatrix p = power_block(m.space, m.L, i, n - 2 * i);
        if (rank(p) != c) fail.insert(i);
    }
    // one-step conditions implied by the power isomorphisms
    if (!m.space.dims.empty()) {
        for (int d = m.space.min_deg() - 1; d <= m.space.max_deg(); ++d) {
            const RatMatrix step = map_block(m.L, m.space, m.space, d);
            if (2 * d < n && m.space.dim(d) > 0) {
                if (rank(step) != m.space.dim(d)) fail.insert(d);
            } else if (2 * d >= n && m.space.dim(d + 1) > 0) {
                if (rank(step) != m.space.dim(d + 1)) fail.insert(d);
            }
        }
    }
    rep.failures.assign(fail.begin(), fail.end());
    rep.holds = rep.failures.empty();
    return rep;
}

PrimitiveDecomposition primitive_parts(const LefschetzModule& m) {
    const auto hl = check_hard_lefschetz(m);
    if (!hl.holds) {
        std::string degs;
        for (int d : hl.failures) degs += " " + std::to_string(d);
        throw HypothesisError("primitive_parts: hard Lefschetz fails at degree(s)" + degs);
    }
    PrimitiveDecomposition out;
    const int n = m.n;
    for (auto& [d, dim] : m.space.dims) {
        if (dim == 0 || 2 * d > n) continue;
        const RatMatrix p = power_block(m.space, m.L, d, n + 1 - 2 * d);
        out.primitive.emplace(d, Subspace::span_rows(dim, kernel_basis(p)));
    }
    for (auto& [d, dim] : m.space.dims) {
        if (dim == 0) continue;
        RatMatrix cols(dim, 0);
        std::vector<std::pair<int, int>> tags;
        for (auto& [j, prim] : out.primitive) {
            if (j > d || d > n - j || prim.dim() == 0) continue;
            const RatMatrix lifted = power_block(m.space, m.L, j, d - j) * prim.basis().transpose();
            cols = cols.hstack(lifted);
            for (int t = 0; t < prim.dim(); ++t) tags.emplace_back(j, d - j);
        }
        if (cols.cols() != dim || (dim > 0 && rank(cols) != dim))
            throw HypothesisError("primitive_parts: Lefschetz decomposition does not span degree " +
                                  std::to_string(d));
        out.expansion_basis.emplace(d, std::move(cols));
        out.expansion_tags.emplace(d, std::move(tags));
    }
    return out;
}

GradedMap lambda_operator(const LefschetzModule& m) {
    const PrimitiveDecomposition pd = primitive_parts(m);
    const int n = m.n;
    GradedMap lam;
    lam.shift = -1;
    for (auto& [d, basis] : pd.expansion_basis) {
        const int dim = m.space.dim(d);
        if (dim == 0) continue;
        RatMatrix target(m.space.dim(d - 1), 0);
        int col = 0;
        for (auto& [j, prim] : pd.primitive) {
            if (j > d || d > n - j || prim.dim() == 0) continue;
            const int k = d - j;
            for (int t = 0; t < prim.dim(); ++t, ++col) {
                RatMatrix v(m.space.dim(d - 1), 1);
                if (k > 0) {
                    // Lambda(L^k p) = k (n - 2j - k + 1) L^(k-1) p for primitive p
                    const Rat c(static_cast<long>(k) * (n - 2 * j - k + 1));
                    v = (power_block(m.space, m.L, j, k - 1) *
                         prim.basis().row_matrix(t).transpose())
                            .scaled(c);
                }
                target = target.hstack(v);
            }
        }
        auto inv = inverse(basis);
        if (!inv) throw HypothesisError("lambda_operator: expansion basis not invertible");
        set_block(lam, d, target * *inv);
    }
    return lam;
}

namespace {

std::map<int, DegPresentation> presentations_for(const LefschetzModule& v,
                                                 const std::map<int, Subspace>& s,
                                                 const std::map<int, Subspace>& t,
                                                 bool t_is_full) {
    std::map<int, DegPresentation> out;
    std::set<int> degs;
    for (auto& [d, n] : v.space.dims) degs.insert(d);
    for (auto& [d, sub] : s) degs.insert(d);
    for (auto& [d, sub] : t) degs.insert(d);
    for (int d : degs) {
        const Subspace sd = family_at(s, v.space, d);
        const Subspace td = t_is_full ? Subspace::full(v.space.dim(d)) : family_at(t, v.space, d);
        out.emplace(d, present_subquotient(sd, td));
    }
    return out;
}

void check_stable(const LefschetzModule& v, const std::map<int, Subspace>& s,
                  const std::string& what) {
    for (auto& [d, sub] : s) {
        if (sub.dim() == 0) continue;
        const Subspace next = family_at(s, v.space, d + 1);
        for (int i = 0; i < sub.dim(); ++i) {
            const RatMatrix img = apply(v.L, v.space, v.space, d, sub.basis().row_matrix(i).transpose());
            if (!next.contains(img))
                throw ContractError(what + ": subspace not L-stable at degree " + std::to_string(d));
        }
    }
}

Presented build_presented(const LefschetzModule& v, const std::map<int, DegPresentation>& pres,
                          int n_mod, const std::string& what) {
    Presented out;
    out.mod.n = n_mod;
    for (auto& [d, p] : pres) out.mod.space.set(d, p.section.cols());
    out.incl.shift = 0;
    out.proj.shift = 0;
    for (auto& [d, p] : pres) {
        set_block(out.incl, d, p.section);
        set_block(out.proj, d, p.proj);
    }
    // induced operator; recheck that it lifts correctly through the section
    for (auto& [d, p] : pres) {
        if (p.section.cols() == 0) continue;
        auto itn = pres.find(d + 1);
        if (itn == pres.end() || itn->second.section.cols() == 0) {
            // target of induced L is zero; nothing to store, but the image of
            // the section must die in the quotient (checked by caller).
            continue;
        }
        const RatMatrix lv = map_block(v.L, v.space, v.space, d);
        set_block(out.mod.L, d, itn->second.proj * lv * p.section);
    }
    out.mod.L.shift = 1;
    validate_module(out.mod, what);
    return out;
}

} // namespace

Presented sub_presentation(const LefschetzModule& v, const std::map<int, Subspace>& s, int n_sub) {
    check_stable(v, s, "sub_presentation");
    std::map<int, DegPresentation> pres;
    std::set<int> degs;
    for (auto& [d, n] : v.space.dims) degs.insert(d);
    for (auto& [d, sub] : s) degs.insert(d);
    for (int d : degs) {
        const Subspace sd = family_at(s, v.space, d);
        pres.emplace(d, present_sub(sd));
    }
    Presented out = build_presented(v, pres, n_sub, "sub_presentation");
    // the induced operator through a *sub* presentation must reproduce L exactly
    for (auto& [d, p] : pres) {
        const RatMatrix lhs = map_block(v.L, v.space, v.space, d) * p.section;
        auto itn = pres.find(d + 1);
        const RatMatrix x = map_block(out.mod.L, out.mod.space, out.mod.space, d);
        const RatMatrix rhs = (itn != pres.end() && itn->second.section.cols() > 0)
                                  ? itn->second.section * x
                                  : RatMatrix(v.space.dim(d + 1), p.section.cols());
        if (lhs != rhs)
            throw ContractError("sub_presentation: subspace not L-stable at degree " +
                                std::to_string(d));
    }
    return out;
}

Presented quotient_presentation(const LefschetzModule& v, const std::map<int, Subspace>& s,
                                int n_quot) {
    check_stable(v, s, "quotient_presentation");
    const auto pres = presentations_for(v, s, {}, true);
    return build_presented(v, pres, n_quot, "quotient_presentation");
}

Presented subquotient_presentation(const LefschetzModule& v, const std::map<int, Subspace>& s,
                                   const std::map<int, Subspace>& t, int n_q) {
    check_stable(v, s, "subquotient_presentation (S)");
    check_stable(v, t, "subquotient_presentation (T)");
    const auto pres = presentations_for(v, s, t, false);
    return build_presented(v, pres, n_q, "subquotient_presentation");
}

} // namespace lefkit
