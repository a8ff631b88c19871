#pragma once

#include "lefkit/matrix.hpp"

#include <cstdint>

namespace lefkit {

/// Deterministic xorshift64* generator. Used by instance generators and
/// property tests so that a seed reproduces the same instance on every
/// platform (no dependence on std::rand / libstdc++ distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return s_ * 0x2545F4914F6CDD1DULL;
    }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform(int lo, int hi) {
        if (hi <= lo) return lo;
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    bool flip() { return (next() & 1u) != 0; }

    /// Small rational with numerator in [-3,3] and denominator in {1,2}.
    Rat small_rat() { return Rat(uniform(-3, 3), uniform(1, 2)); }

    Rat nonzero_small_rat() {
        Rat r = small_rat();
        while (r.is_zero()) r = small_rat();
        return r;
    }

    /// Random invertible matrix: product of unit triangular matrices and a
    /// diagonal of nonzero entries.
    RatMatrix invertible(int n) {
        RatMatrix lo = RatMatrix::identity(n), up = RatMatrix::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                if (flip()) lo.at(i, j) = small_rat();
                if (flip()) up.at(j, i) = small_rat();
            }
        RatMatrix d(n, n);
        for (int i = 0; i < n; ++i) d.at(i, i) = nonzero_small_rat();
        return lo * d * up;
    }

    /// Random symmetric positive definite matrix (L^T D L with D > 0).
    RatMatrix spd(int n) {
        RatMatrix lo = RatMatrix::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (flip()) lo.at(i, j) = small_rat();
        RatMatrix d(n, n);
        for (int i = 0; i < n; ++i) d.at(i, i) = Rat(uniform(1, 3), uniform(1, 2));
        return lo.transpose() * d * lo;
    }

private:
    std::uint64_t s_;
};

} // namespace lefkit
