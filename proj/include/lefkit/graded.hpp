#pragma once

#include "lefkit/linalg.hpp"

#include <map>

namespace lefkit {

/// Finitely supported dimension function degree -> count. Degrees outside the
/// stored support have dimension 0.
struct GradedSpace {
    std::map<int, int> dims;

    int dim(int d) const {
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    }
    void set(int d, int n);
    int total() const;
    bool empty() const { return dims.empty(); }
    int min_deg() const;
    int max_deg() const;
    bool operator==(const GradedSpace&) const = default;
};

/// Degree-shifting family of matrices between graded spaces. A missing block
/// is the zero map; blocks are keyed by source degree, block(d) maps
/// source^d -> target^(d+shift).
struct GradedMap {
    int shift = 0;
    std::map<int, RatMatrix> blocks;
};

/// Block of f at source degree d, materialized with explicit shape
/// (dst.dim(d+f.shift) x src.dim(d)).
RatMatrix map_block(const GradedMap& f, const GradedSpace& src, const GradedSpace& dst, int d);

/// Insert a block, dropping it when empty or zero.
void set_block(GradedMap& f, int d, const RatMatrix& m);

/// Shape-check every stored block against src/dst; throws ContractError.
void validate_map(const GradedMap& f, const GradedSpace& src, const GradedSpace& dst,
                  const std::string& name);

GradedMap compose(const GradedMap& g, const GradedMap& f, const GradedSpace& src,
                  const GradedSpace& mid, const GradedSpace& dst);

GradedMap map_add(const GradedMap& f, const GradedMap& g, const GradedSpace& src,
                  const GradedSpace& dst);
GradedMap map_scale(const GradedMap& f, const Rat& c);
GradedMap identity_map(const GradedSpace& v);

bool map_equal(const GradedMap& f, const GradedMap& g, const GradedSpace& src,
               const GradedSpace& dst);

/// Matrix of L^k : V^d -> V^(d+k*L.shift) by composing blocks. k >= 0.
RatMatrix power_block(const GradedSpace& v, const GradedMap& l, int d, int k);

/// Apply f to a column vector sitting in degree d of src.
RatMatrix apply(const GradedMap& f, const GradedSpace& src, const GradedSpace& dst, int d,
                const RatMatrix& col);

} // namespace lefkit
