#include "lefkit/linalg.hpp"

#include "lefkit/errors.hpp"

#include <algorithm>

namespace lefkit {

Rref rref(RatMatrix a) {
    Rref out;
    std::vector<int> pivots;
    int lead = 0;
    for (int r = 0; r < a.rows() && lead < a.cols(); ++r) {
        int piv = -1;
        while (lead < a.cols()) {
            for (int i = r; i < a.rows(); ++i) {
                if (!a.at(i, lead).is_zero()) { piv = i; break; }
            }
            if (piv >= 0) break;
            ++lead;
        }
        if (piv < 0) break;
        if (piv != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
        const Rat inv = Rat(1) / a.at(r, lead);
        for (int j = lead; j < a.cols(); ++j) a.at(r, j) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, lead).is_zero()) continue;
            const Rat f = a.at(i, lead);
            for (int j = lead; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
        }
        pivots.push_back(lead);
        ++lead;
    }
    out.mat = std::move(a);
    out.pivots = std::move(pivots);
    return out;
}

int rank(const RatMatrix& a) { return static_cast<int>(rref(a).pivots.size()); }

RatMatrix kernel_basis(const RatMatrix& a) {
    if (a.cols() == 0) return RatMatrix(0, 0);
    const Rref r = rref(a);
    std::vector<bool> is_piv(a.cols(), false);
    for (int p : r.pivots) is_piv[p] = true;
    std::vector<std::vector<Rat>> rows;
    for (int f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<Rat> v(a.cols(), Rat(0));
        v[f] = Rat(1);
        for (std::size_t pr = 0; pr < r.pivots.size(); ++pr)
            v[r.pivots[pr]] = -r.mat.at(static_cast<int>(pr), f);
        rows.push_back(std::move(v));
    }
    if (rows.empty()) return RatMatrix(0, a.cols());
    // already independent; canonicalize to reduced echelon rows
    return rref(RatMatrix::from_rows(rows)).mat;
}

RatMatrix image_basis(const RatMatrix& a) {
    if (a.rows() == 0) return RatMatrix(0, 0);
    const Rref r = rref(a.transpose());
    const int rk = static_cast<int>(r.pivots.size());
    RatMatrix out(rk, a.rows());
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < a.rows(); ++j) out.at(i, j) = r.mat.at(i, j);
    return out;
}

ImageKernel image_kernel(const RatMatrix& a) {
    return ImageKernel{image_basis(a), kernel_basis(a)};
}

std::optional<LinSolve> solve(const RatMatrix& a, const RatMatrix& b) {
    if (b.cols() != 1 && !(b.rows() == 0 && a.rows() == 0))
        throw ContractError("solve: b must be a column");
    if (a.rows() != b.rows()) throw ContractError("solve: dimension mismatch");
    const Rref r = rref(a.hstack(b.cols() == 1 ? b : RatMatrix(a.rows(), 1)));
    // inconsistent iff a pivot lands in the augmented column
    for (int p : r.pivots)
        if (p == a.cols()) return std::nullopt;
    RatMatrix x(a.cols(), 1);
    for (std::size_t pr = 0; pr < r.pivots.size(); ++pr)
        x.at(r.pivots[pr], 0) = r.mat.at(static_cast<int>(pr), a.cols());
    return LinSolve{std::move(x), kernel_basis(a)};
}

std::optional<RatMatrix> solve_matrix(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw ContractError("solve_matrix: dimension mismatch");
    RatMatrix x(a.cols(), b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        auto s = solve(a, b.col_matrix(c));
        if (!s) return std::nullopt;
        for (int i = 0; i < a.cols(); ++i) x.at(i, c) = s->particular.at(i, 0);
    }
    return x;
}

Signature signature(RatMatrix g) {
    if (!g.is_symmetric()) throw ContractError("signature: matrix is not symmetric");
    Signature s;
    const int n = g.rows();
    // symmetric congruence reduction; exact over Q
    std::vector<bool> done(n, false);
    int remaining = n;
    while (remaining > 0) {
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && !g.at(i, i).is_zero()) { p = i; break; }
        if (p < 0) {
            // all active diagonal entries are zero; find an off-diagonal entry
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i) {
                if (done[i]) continue;
                for (int j = i + 1; j < n; ++j) {
                    if (done[j]) continue;
                    if (!g.at(i, j).is_zero()) { a = i; b = j; break; }
                }
            }
            if (a < 0) {
                for (int i = 0; i < n; ++i)
                    if (!done[i]) { ++s.zero; done[i] = true; --remaining; }
                break;
            }
            // row/col b added to a makes the (a,a) entry 2*g(a,b) != 0
            for (int j = 0; j < n; ++j) g.at(a, j) += g.at(b, j);
            for (int i = 0; i < n; ++i) g.at(i, a) += g.at(i, b);
            p = a;
        }
        const Rat d = g.at(p, p);
        if (d.sign() > 0) ++s.plus; else ++s.minus;
        for (int i = 0; i < n; ++i) {
            if (done[i] || i == p || g.at(i, p).is_zero()) continue;
            const Rat f = g.at(i, p) / d;
            for (int j = 0; j < n; ++j) g.at(i, j) -= f * g.at(p, j);
            for (int j = 0; j < n; ++j) g.at(j, i) -= f * g.at(j, p);
        }
        done[p] = true;
        --remaining;
    }
    return s;
}

std::optional<RatMatrix> inverse(const RatMatrix& a) {
    if (!a.is_square()) return std::nullopt;
    const int n = a.rows();
    const Rref r = rref(a.hstack(RatMatrix::identity(n)));
    if (static_cast<int>(r.pivots.size()) != n) return std::nullopt;
    RatMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = r.mat.at(i, n + j);
    return inv;
}

Rat det(RatMatrix a) {
    if (!a.is_square()) throw ContractError("det: matrix is not square");
    const int n = a.rows();
    Rat d(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!a.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) return Rat(0);
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(c, j));
            d = -d;
        }
        d *= a.at(c, c);
        const Rat inv = Rat(1) / a.at(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (a.at(i, c).is_zero()) continue;
            const Rat f = a.at(i, c) * inv;
            for (int j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
        }
    }
    return d;
}

Subspace Subspace::span_rows(int ambient, const RatMatrix& rows) {
    if (!rows.empty() && rows.cols() != ambient)
        throw ContractError("Subspace: row length does not match ambient dimension");
    Subspace s(ambient);
    if (rows.rows() == 0) return s;
    const Rref r = rref(rows);
    const int rk = static_cast<int>(r.pivots.size());
    RatMatrix b(rk, ambient);
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < ambient; ++j) b.at(i, j) = r.mat.at(i, j);
    s.basis_ = std::move(b);
    s.pivots_ = r.pivots;
    return s;
}

Subspace Subspace::full(int ambient) {
    return span_rows(ambient, RatMatrix::identity(ambient));
}

bool Subspace::contains(const RatMatrix& col) const {
    if (col.rows() != ambient_ || col.cols() != 1)
        throw ContractError("Subspace::contains: bad vector shape");
    if (dim() == 0) return col.is_zero();
    auto s = solve(basis_.transpose(), col);
    return s.has_value();
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw ContractError("Subspace::contains: ambient mismatch");
    for (int i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row_matrix(i).transpose())) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw ContractError("Subspace::sum: ambient mismatch");
    return span_rows(ambient_, basis_.vstack(o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw ContractError("Subspace::intersect: ambient mismatch");
    if (dim() == 0 || o.dim() == 0) return Subspace(ambient_);
    // x = a^T B1 = b^T B2  <=>  (a; -b) in kernel of [B1^T | B2^T]
    const RatMatrix m = basis_.transpose().hstack(o.basis_.transpose());
    const RatMatrix k = kernel_basis(m);
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < k.rows(); ++i) {
        std::vector<Rat> a(dim());
        for (int j = 0; j < dim(); ++j) a[j] = k.at(i, j);
        std::vector<Rat> x(ambient_, Rat(0));
        for (int j = 0; j < dim(); ++j)
            for (int c = 0; c < ambient_; ++c) x[c] += a[j] * basis_.at(j, c);
        rows.push_back(std::move(x));
    }
    if (rows.empty()) return Subspace(ambient_);
    return span_rows(ambient_, RatMatrix::from_rows(rows));
}

std::optional<RatMatrix> Subspace::coordinates(const RatMatrix& col) const {
    if (col.rows() != ambient_ || col.cols() != 1)
        throw ContractError("Subspace::coordinates: bad vector shape");
    if (dim() == 0) {
        if (col.is_zero()) return RatMatrix(0, 1);
        return std::nullopt;
    }
    auto s = solve(basis_.transpose(), col);
    if (!s) return std::nullopt;
    return s->particular;
}

RatMatrix complement_in(const Subspace& s, const Subspace& t) {
    if (s.ambient() != t.ambient()) throw ContractError("complement_in: ambient mismatch");
    if (!t.contains(s)) throw ContractError("complement_in: S is not contained in T");
    RatMatrix residue = t.basis();
    // eliminate S-pivot coordinates from T's rows, then re-echelonize
    const auto piv = s.pivots();
    for (int i = 0; i < residue.rows(); ++i) {
        for (std::size_t k = 0; k < piv.size(); ++k) {
            const Rat f = residue.at(i, piv[k]);
            if (f.is_zero()) continue;
            for (int j = 0; j < residue.cols(); ++j)
                residue.at(i, j) -= f * s.basis().at(static_cast<int>(k), j);
        }
    }
    const Rref r = rref(residue);
    const int rk = static_cast<int>(r.pivots.size());
    RatMatrix out(rk, t.ambient());
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < t.ambient(); ++j) out.at(i, j) = r.mat.at(i, j);
    return out;
}

Subspace right_perp(const Subspace& s, const RatMatrix& gram) {
    if (gram.rows() != s.ambient()) throw ContractError("right_perp: gram shape mismatch");
    if (s.dim() == 0) return Subspace::full(gram.cols());
    return Subspace::span_rows(gram.cols(), kernel_basis(s.basis() * gram));
}

DegPresentation present_subquotient(const Subspace& s, const Subspace& t) {
    const int amb = s.ambient();
    const RatMatrix c = complement_in(s, t);
    const RatMatrix d = complement_in(t, Subspace::full(amb));
    RatMatrix stacked = s.basis().vstack(c).vstack(d); // amb x amb, invertible
    if (stacked.rows() != amb)
        throw ContractError("present_subquotient: dimension bookkeeping failed");
    auto inv = inverse(stacked.transpose());
    if (!inv) throw ContractError("present_subquotient: basis not invertible");
    DegPresentation out;
    out.section = c.transpose();
    RatMatrix proj(c.rows(), amb);
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < amb; ++j) proj.at(i, j) = inv->at(s.dim() + i, j);
    out.proj = std::move(proj);
    return out;
}

DegPresentation present_sub(const Subspace& s) {
    return present_subquotient(Subspace(s.ambient()), s);
}

Rat poly_eval(const Poly& p, const Rat& x) {
    Rat v(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

bool poly_is_zero(const Poly& p) {
    for (const auto& c : p)
        if (!c.is_zero()) return false;
    return true;
}

Poly lagrange_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    if (xs.size() != ys.size()) throw ContractError("interpolate: size mismatch");
    const std::size_t n = xs.size();
    Poly acc(n, Rat(0));
    for (std::size_t k = 0; k < n; ++k) {
        // basis polynomial for node k
        Poly basis{Rat(1)};
        Rat denom(1);
        for (std::size_t m = 0; m < n; ++m) {
            if (m == k) continue;
            Poly next(basis.size() + 1, Rat(0));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                next[i + 1] += basis[i];
                next[i] -= xs[m] * basis[i];
            }
            basis = std::move(next);
            denom *= (xs[k] - xs[m]);
        }
        const Rat scale = ys[k] / denom;
        for (std::size_t i = 0; i < basis.size(); ++i) acc[i] += scale * basis[i];
    }
    while (acc.size() > 1 && acc.back().is_zero()) acc.pop_back();
    return acc;
}

Rat cauchy_root_bound(const Poly& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d > 0 && p[d].is_zero()) --d;
    if (d <= 0) return Rat(0);
    Rat mx(0);
    for (int i = 0; i < d; ++i) {
        const Rat q = (p[i] / p[d]).abs();
        if (q > mx) mx = q;
    }
    return Rat(1) + mx;
}

} // namespace lefkit
