#include "lefkit/graded.hpp"

#include "lefkit/errors.hpp"

namespace lefkit {

void GradedSpace::set(int d, int n) {
    if (n < 0) throw ContractError("GradedSpace: negative dimension");
    if (n == 0) dims.erase(d);
    else dims[d] = n;
}

int GradedSpace::total() const {
    int t = 0;
    for (auto& [d, n] : dims) t += n;
    return t;
}

int GradedSpace::min_deg() const {
    if (dims.empty()) return 0;
    return dims.begin()->first;
}

int GradedSpace::max_deg() const {
    if (dims.empty()) return 0;
    return dims.rbegin()->first;
}

RatMatrix map_block(const GradedMap& f, const GradedSpace& src, const GradedSpace& dst, int d) {
    const int r = dst.dim(d + f.shift), c = src.dim(d);
    auto it = f.blocks.find(d);
    if (it == f.blocks.end()) return RatMatrix(r, c);
    if (it->second.rows() != r || it->second.cols() != c)
        throw ContractError("GradedMap: block shape mismatch at degree " + std::to_string(d));
    return it->second;
}

void set_block(GradedMap& f, int d, const RatMatrix& m) {
    if (m.empty() || m.is_zero()) {
        f.blocks.erase(d);
        return;
    }
    f.blocks[d] = m;
}

void validate_map(const GradedMap& f, const GradedSpace& src, const GradedSpace& dst,
                  const std::string& name) {
    for (auto& [d, b] : f.blocks) {
        if (b.rows() != dst.dim(d + f.shift) || b.cols() != src.dim(d))
            throw ContractError(name + ": block at degree " + std::to_string(d) +
                                " has shape " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ", expected " +
                                std::to_string(dst.dim(d + f.shift)) + "x" +
                                std::to_string(src.dim(d)));
    }
}

GradedMap compose(const GradedMap& g, const GradedMap& f, const GradedSpace& src,
                  const GradedSpace& mid, const GradedSpace& dst) {
    GradedMap h;
    h.shift = f.shift + g.shift;
    for (auto& [d, n] : src.dims) {
        const RatMatrix a = map_block(f, src, mid, d);
        const RatMatrix b = map_block(g, mid, dst, d + f.shift);
        if (a.empty() || b.empty()) continue;
        set_block(h, d, b * a);
    }
    return h;
}

GradedMap map_add(const GradedMap& f, const GradedMap& g, const GradedSpace& src,
                  const GradedSpace& dst) {
    if (f.shift != g.shift) throw ContractError("map_add: shift mismatch");
    GradedMap h;
    h.shift = f.shift;
    for (auto& [d, n] : src.dims) {
        const RatMatrix a = map_block(f, src, dst, d);
        const RatMatrix b = map_block(g, src, dst, d);
        if (a.empty()) continue;
        set_block(h, d, a + b);
    }
    return h;
}

GradedMap map_scale(const GradedMap& f, const Rat& c) {
    GradedMap h;
    h.shift = f.shift;
    if (c.is_zero()) return h;
    for (auto& [d, b] : f.blocks) h.blocks[d] = b.scaled(c);
    return h;
}

GradedMap identity_map(const GradedSpace& v) {
    GradedMap h;
    for (auto& [d, n] : v.dims) h.blocks[d] = RatMatrix::identity(n);
    return h;
}

bool map_equal(const GradedMap& f, const GradedMap& g, const GradedSpace& src,
               const GradedSpace& dst) {
    if (f.shift != g.shift) return false;
    for (auto& [d, n] : src.dims)
        if (map_block(f, src, dst, d) != map_block(g, src, dst, d)) return false;
    return true;
}

RatMatrix power_block(const GradedSpace& v, const GradedMap& l, int d, int k) {
    if (k < 0) throw ContractError("power_block: negative exponent");
    RatMatrix m = RatMatrix::identity(v.dim(d));
    int cur = d;
    for (int i = 0; i < k; ++i) {
        m = map_block(l, v, v, cur) * m;
        cur += l.shift;
    }
    return m;
}

RatMatrix apply(const GradedMap& f, const GradedSpace& src, const GradedSpace& dst, int d,
                const RatMatrix& col) {
    if (col.rows() != src.dim(d) || col.cols() != 1)
        throw ContractError("apply: vector shape mismatch");
    return map_block(f, src, dst, d) * col;
}

} // namespace lefkit
