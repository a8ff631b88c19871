#include <doctest.h>

#include "lefkit/linalg.hpp"
#include "lefkit/errors.hpp"
#include "lefkit/rng.hpp"

using namespace lefkit;

namespace {

RatMatrix m2(long a, long b, long c, long d) {
    return RatMatrix::from_rows({{Rat(a), Rat(b)}, {Rat(c), Rat(d)}});
}

} // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(Rat::parse("3").str() == "3");
    CHECK(Rat::parse("6/4").str() == "3/2");
    CHECK(Rat::parse("-6/4").str() == "-3/2");
    CHECK(Rat::parse("6/-4").str() == "-3/2");
    CHECK(Rat::parse("0/7").str() == "0");
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK_THROWS_AS(Rat::parse("1/0"), ContractError);
    CHECK_THROWS_AS(Rat::parse("a"), ContractError);
    CHECK_THROWS_AS(Rat::parse("1.5"), ContractError);
}

TEST_CASE("solve: identity system") {
    auto s = solve(RatMatrix::identity(2), RatMatrix::column({Rat(3), Rat(1, 2)}));
    REQUIRE(s.has_value());
    CHECK(s->particular == RatMatrix::column({Rat(3), Rat(1, 2)}));
    CHECK(s->kernel.rows() == 0);
}

TEST_CASE("solve: one-equation kernel") {
    auto s = solve(RatMatrix::from_rows({{Rat(1), Rat(1)}}), RatMatrix::column({Rat(0)}));
    REQUIRE(s.has_value());
    CHECK(s->particular.is_zero());
    CHECK(s->kernel == RatMatrix::from_rows({{Rat(1), Rat(-1)}}));
}

TEST_CASE("solve: rank-deficient with particular solution") {
    auto s = solve(m2(-2, 2, 2, -2), RatMatrix::column({Rat(-1, 2), Rat(1, 2)}));
    REQUIRE(s.has_value());
    CHECK(s->particular == RatMatrix::column({Rat(1, 4), Rat(0)}));
    CHECK(s->kernel == RatMatrix::from_rows({{Rat(1), Rat(1)}}));
}

TEST_CASE("solve: inconsistent and mismatched input") {
    CHECK(!solve(m2(1, 1, 1, 1), RatMatrix::column({Rat(0), Rat(1)})).has_value());
    CHECK_THROWS_AS(solve(m2(1, 1, 1, 1), RatMatrix::column({Rat(0)})), ContractError);
}

TEST_CASE("image_kernel examples") {
    auto ik0 = image_kernel(RatMatrix(2, 2));
    CHECK(ik0.image.rows() == 0);
    CHECK(ik0.kernel == RatMatrix::identity(2));

    auto ik1 = image_kernel(m2(-2, 2, 2, -2));
    CHECK(ik1.image == RatMatrix::from_rows({{Rat(1), Rat(-1)}}));
    CHECK(ik1.kernel == RatMatrix::from_rows({{Rat(1), Rat(1)}}));

    auto ik2 = image_kernel(RatMatrix::from_rows({{Rat(1)}, {Rat(0)}}));
    CHECK(ik2.image == RatMatrix::from_rows({{Rat(1), Rat(0)}}));
    CHECK(ik2.kernel.rows() == 0);
}

TEST_CASE("rank + nullity = cols on random matrices") {
    Rng rng(7);
    for (int t = 0; t < 40; ++t) {
        const int r = rng.uniform(0, 5), c = rng.uniform(0, 5);
        RatMatrix a(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) a.at(i, j) = rng.small_rat();
        auto ik = image_kernel(a);
        CHECK(ik.image.rows() + ik.kernel.rows() == c);
        // exact residual: every solvable system solves exactly
        if (c > 0) {
            RatMatrix x(c, 1);
            for (int j = 0; j < c; ++j) x.at(j, 0) = rng.small_rat();
            const RatMatrix b = a * x;
            auto s = solve(a, b);
            REQUIRE(s.has_value());
            CHECK((a * s->particular - b).is_zero());
        }
    }
}

TEST_CASE("signature examples") {
    CHECK(signature(RatMatrix::from_rows({{Rat(1)}})) == Signature{1, 0, 0});
    CHECK(signature(RatMatrix::from_rows({{Rat(-2)}})) == Signature{0, 1, 0});
    CHECK(signature(m2(-2, 2, 2, -2)) == Signature{0, 1, 1});
    CHECK(signature(RatMatrix(0, 0)) == Signature{0, 0, 0});
    // hyperbolic plane: zero diagonal
    CHECK(signature(m2(0, 1, 1, 0)) == Signature{1, 1, 0});
    CHECK_THROWS_AS(signature(m2(0, 1, 2, 0)), ContractError);
}

TEST_CASE("signature is congruence invariant") {
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        const int n = rng.uniform(1, 4);
        RatMatrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                g.at(i, j) = rng.small_rat();
                g.at(j, i) = g.at(i, j);
            }
        const RatMatrix p = rng.invertible(n);
        CHECK(signature(p.transpose() * g * p) == signature(g));
    }
}

TEST_CASE("subspace canonicalization decides equality") {
    auto s1 = Subspace::span_rows(3, RatMatrix::from_rows({{Rat(2), Rat(0), Rat(2)}, {Rat(0), Rat(3), Rat(3)}}));
    auto s2 = Subspace::span_rows(3, RatMatrix::from_rows({{Rat(1), Rat(1), Rat(2)}, {Rat(1), Rat(-1), Rat(0)}}));
    CHECK(s1 == s2);
    CHECK(s1.contains(RatMatrix::column({Rat(1), Rat(1), Rat(2)})));
    CHECK(!s1.contains(RatMatrix::column({Rat(1), Rat(0), Rat(0)})));

    auto inter = s1.intersect(Subspace::span_rows(3, RatMatrix::from_rows({{Rat(1), Rat(0), Rat(1)}})));
    CHECK(inter.dim() == 1);
    CHECK(inter.contains(RatMatrix::column({Rat(1), Rat(0), Rat(1)})));
}

TEST_CASE("subquotient presentation has proj*section = id") {
    auto s = Subspace::span_rows(3, RatMatrix::from_rows({{Rat(1), Rat(1), Rat(0)}}));
    auto t = Subspace::full(3);
    auto pres = present_subquotient(s, t);
    CHECK((pres.proj * pres.section) == RatMatrix::identity(2));
    // proj kills S
    CHECK((pres.proj * RatMatrix::column({Rat(1), Rat(1), Rat(0)})).is_zero());
}

TEST_CASE("polynomial interpolation and root bound") {
    // p(x) = (x-1)(x-3) = x^2 - 4x + 3
    std::vector<Rat> xs{Rat(0), Rat(1), Rat(2)};
    std::vector<Rat> ys{Rat(3), Rat(0), Rat(-1)};
    const Poly p = lagrange_interpolate(xs, ys);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == Rat(3));
    CHECK(p[1] == Rat(-4));
    CHECK(p[2] == Rat(1));
    CHECK(poly_eval(p, Rat(3)) == Rat(0));
    CHECK(cauchy_root_bound(p) >= Rat(3));
}
