#pragma once

// Small hand-built instances shared across the test suites.

#include "lefkit/splitting.hpp"
#include "lefkit/pairing.hpp"

namespace lefkit::testfix {

/// Module with dims 1 in degrees 0..n, every L block the 1x1 identity.
inline LefschetzModule line_power_module(int n) {
    LefschetzModule m;
    m.n = n;
    for (int d = 0; d <= n; ++d) m.space.set(d, 1);
    m.L.shift = 1;
    for (int d = 0; d < n; ++d) m.L.blocks[d] = RatMatrix::identity(1);
    return m;
}

/// Standard pairing <h^i, h^(n-i)> = 1 for line_power_module(n).
inline GradedPairing line_power_pairing(int n) {
    GradedPairing p;
    p.total = n;
    for (int d = 0; d <= n; ++d) p.blocks[d] = RatMatrix::identity(1);
    return p;
}

/// Module concentrated in one degree with given dimension (L = 0).
inline LefschetzModule concentrated(int deg, int dim, int n) {
    LefschetzModule m;
    m.n = n;
    m.space.set(deg, dim);
    m.L.shift = 1;
    return m;
}

} // namespace lefkit::testfix
