#include <doctest.h>

#include "lefkit/models.hpp"
#include "lefkit/errors.hpp"

using namespace lefkit;

namespace {

ArakelovData fix_toy() {
    return arithmetic_surface_toy(Rat(2), Rat(6), RatMatrix::from_rows({{Rat(-1)}}), {});
}

ReductionGraph cyc2_graph() {
    ReductionGraph g;
    g.components = 2;
    g.intersection = RatMatrix::from_rows({{Rat(-2), Rat(2)}, {Rat(2), Rat(-2)}});
    g.l_degrees = {Rat(1), Rat(1)};
    return g;
}

} // namespace

TEST_CASE("decompose on the arithmetic-surface toy") {
    const auto d = fix_toy();
    const auto s = decompose(d);
    CHECK(s.h_L == Rat(3, 2));
    // alpha0([X_K]) = [X]
    CHECK(s.fund == RatMatrix::column({Rat(1)}));
    // X_eps is the second degree-1 basis vector
    CHECK(s.eps_class == RatMatrix::column({Rat(0), Rat(1), Rat(0)}));
    // c1(L0) = c1(L) - (3/2) X_eps, with vanishing self-intersection
    CHECK(s.c1_L0 == RatMatrix::column({Rat(1), Rat(-3, 2), Rat(0)}));
    const Rat self = (s.c1_L0.transpose() * d.pair.blocks.at(1) * s.c1_L0).at(0, 0);
    CHECK(self == Rat(0));
    // beta([X_K]) = (3/2)·X_eps in the G2 presentation
    const auto g = graded_pieces(FilteredLefschetzModule{d.chbar, d.F1, d.F2});
    const RatMatrix b = map_block(s.S.beta, g.G0.mod.space, g.G2.mod.space, 0);
    const RatMatrix ec = map_block(g.G2.proj, d.chbar.space, g.G2.mod.space, 1) * s.eps_class;
    CHECK(b == ec.scaled(Rat(3, 2)));
    CHECK(verify_block_form(FilteredLefschetzModule{d.chbar, d.F1, d.F2}, s.S));
}

TEST_CASE("decompose with rank-zero height part") {
    const auto d = arithmetic_surface_toy(Rat(2), Rat(6), RatMatrix(0, 0), {});
    const auto s = decompose(d);
    CHECK(s.h_L == Rat(3, 2));
    const auto g = graded_pieces(FilteredLefschetzModule{d.chbar, d.F1, d.F2});
    CHECK(g.G1.mod.space.total() == 0);
}

TEST_CASE("degenerate toy data is rejected") {
    // X_eps · c1(L) = 0 forces L(X_eps) = 0 through adjointness, which in
    // turn breaks the orthogonal-complement invariant between B and F1 — the
    // contract check catches the degeneration before the Lefschetz check on
    // the vertical piece could.
    auto d = fix_toy();
    RatMatrix l1(1, 3);
    l1.at(0, 0) = Rat(6); // L(H) keeps its value, L(E) = 0
    set_block(d.chbar.L, 1, l1);
    RatMatrix e1(1, 3); // keep eps self-adjoint by matching the L change
    set_block(d.eps_op, 1, e1);
    RatMatrix g1 = d.pair.blocks.at(1);
    g1.at(0, 1) = Rat(0);
    g1.at(1, 0) = Rat(0); // X_eps · c1(L) = 0
    d.pair.blocks[1] = g1;
    CHECK_THROWS_AS(decompose(d), ContractError);

    // a structurally consistent failure of the vertical Lefschetz piece:
    // join B with a second vertical line that L kills
    FilteredLefschetzModule f{fix_toy().chbar, {}, {}};
    f.F1 = fix_toy().F1;
    f.F2 = fix_toy().F2;
    f.F2.at(1) = f.F1.at(1); // G2 gains the height line, which L annihilates
    CHECK_THROWS_AS(three_step_split(f), HypothesisError);
}

TEST_CASE("l_lift of the polarization and a height generator") {
    const auto d = fix_toy();
    const auto s = decompose(d);
    const RatMatrix lifted = l_lift(d, s, d.cycles.at("c1L"));
    CHECK(lifted == s.c1_L0);
    const RatMatrix pic = l_lift(d, s, d.cycles.at("pic1"));
    CHECK(pic == RatMatrix::column({Rat(0), Rat(0), Rat(1)}));
    Cycle zero;
    zero.p = 1;
    zero.coords = RatMatrix(2, 1);
    CHECK(l_lift(d, s, zero).is_zero());
}

TEST_CASE("l_pairing identities on the toy") {
    const auto d = fix_toy();
    const auto s = decompose(d);
    // height generator against itself: the height Gram value
    CHECK(l_pairing(d, s, d.cycles.at("pic1"), d.cycles.at("pic1")) == Rat(-1));
    // polarization against a point class: isotropy of the cohomology lifts
    CHECK(l_pairing(d, s, d.cycles.at("c1L"), d.cycles.at("point")) == Rat(0));
    Cycle zero;
    zero.p = 1;
    zero.coords = RatMatrix(2, 1);
    CHECK(l_pairing(d, s, zero, d.cycles.at("pic1")) == Rat(0));
}

TEST_CASE("induced pairings on the toy satisfy the relation chain") {
    const auto d = fix_toy();
    const FilteredLefschetzModule f{d.chbar, d.F1, d.F2};
    const auto s = three_step_split(f);
    const auto ip = induced_graded_pairings(f, d.pair, s);
    // ([X_K], c1(L_K))_00 = (X_K, beta c1(L_K))_02 = h_L · deg(L_K) = 3
    REQUIRE(ip.p00.blocks.count(0));
    CHECK(ip.p00.blocks.at(0) == RatMatrix::from_rows({{Rat(3)}}));
    // the G1 block carries the height Gram
    REQUIRE(ip.p11.blocks.count(1));
    CHECK(ip.p11.blocks.at(1) == RatMatrix::from_rows({{Rat(-1)}}));
    CHECK(block_form_check(f, d.pair, s));
}

TEST_CASE("gs/beilinson equivalence report on the toy") {
    const auto d = fix_toy();
    const auto rep = gs_beilinson_equivalence(d);
    CHECK(rep.gs);
    CHECK(rep.beilinson);
    CHECK(rep.agree);
    CHECK(rep.adm_standard);
    CHECK(rep.internals_available);
    CHECK(rep.c_stable);
    CHECK(rep.c_standard);
    CHECK(rep.lambdaB_iso_A);
    CHECK(rep.f1_eq_B_plus_D);
    CHECK(rep.g1_iso_D);
    // C^1 contains X_eps and its Lambda-partner spans against D
    REQUIRE(rep.C.count(1));
    CHECK(rep.C.at(1).dim() == 2);
    CHECK(rep.C.at(1).contains(RatMatrix::column({Rat(0), Rat(1), Rat(0)})));
    REQUIRE(rep.D.count(1));
    CHECK(rep.D.at(1) == Subspace::span_rows(3, RatMatrix::from_rows({{Rat(0), Rat(0), Rat(1)}})));
}

TEST_CASE("wrong-sign height Gram flips both verdicts together") {
    const auto d = [] {
        auto base = arithmetic_surface_toy(Rat(2), Rat(6), RatMatrix::from_rows({{Rat(-1)}}), {});
        RatMatrix g1 = base.pair.blocks.at(1);
        g1.at(2, 2) = Rat(1); // height Gram becomes +1
        base.pair.blocks[1] = g1;
        return base;
    }();
    const auto rep = gs_beilinson_equivalence(d);
    CHECK(!rep.gs);
    CHECK(!rep.beilinson);
    CHECK(rep.agree);
}

TEST_CASE("gs false / beilinson true instances are repaired by the twist") {
    // negative self-intersection of the polarization keeps hard Lefschetz but
    // breaks positivity on the cohomology part only
    const auto d = arithmetic_surface_toy(Rat(2), Rat(-6), RatMatrix::from_rows({{Rat(-1)}}), {});
    const auto rep = gs_beilinson_equivalence(d);
    CHECK(!rep.gs);
    CHECK(rep.beilinson);
    CHECK(!rep.agree);
    const FilteredLefschetzModule f{d.chbar, d.F1, d.F2};
    const auto s = three_step_split(f);
    const Rat c = find_polarization_twist(f, d.pair, s, d.eps_op);
    CHECK(c > Rat(0));
    // after twisting, the gs predicate holds
    ArakelovData dt = d;
    dt.chbar.L = map_add(d.chbar.L, map_scale(d.eps_op, c), d.chbar.space, d.chbar.space);
    const auto rep2 = gs_beilinson_equivalence(dt);
    CHECK(rep2.gs);
    CHECK(rep2.beilinson);
    CHECK(rep2.agree);
}

TEST_CASE("divisor decomposition on the toy") {
    const auto d = fix_toy();
    const auto dd = divisor_decomposition(d);
    // alpha1 of the height generator is the normalized basis vector itself
    CHECK(dd.alpha1 == RatMatrix::from_rows({{Rat(0)}, {Rat(0)}, {Rat(1)}}));
    // alpha0 of c1(L_K) agrees with the global decomposition
    CHECK(dd.alpha0 == RatMatrix::from_rows({{Rat(1)}, {Rat(-3, 2)}, {Rat(0)}}));
    // M = L_K lifts to L0
    const auto s = decompose(d);
    CHECK(divisor_l_lift(d, dd, d.cycles.at("c1L").coords) == s.c1_L0);
    // the trivial divisor lifts to a vertical-trivial class
    RatMatrix zero(2, 1);
    CHECK(divisor_l_lift(d, dd, zero).is_zero());
}

TEST_CASE("divisor decomposition rejects a positive height direction") {
    auto d = fix_toy();
    RatMatrix g1 = d.pair.blocks.at(1);
    g1.at(2, 2) = Rat(1);
    d.pair.blocks[1] = g1;
    CHECK_THROWS_AS(divisor_decomposition(d), HypothesisError);
}

TEST_CASE("zero-cycle decomposition collapses onto the divisor picture for n = 1") {
    auto d = arithmetic_surface_toy(Rat(2), Rat(6), RatMatrix::from_rows({{Rat(-1)}}),
                                    {cyc2_graph()});
    const auto dd = divisor_decomposition(d);
    const auto zd = zero_cycle_decomposition(d);
    CHECK(zd.c_top_dim == 0);
    CHECK(zd.bc_dim == 0);
    CHECK(zd.c1_zero);
    CHECK(zd.l_injective);
    CHECK(zd.direct_sum);
    // the 0-cycle lift of a point class matches the divisor lift
    const RatMatrix xi = d.cycles.at("point").coords;
    const RatMatrix zlift = zero_cycle_l_lift(d, dd, zd, xi);
    const RatMatrix dlift = divisor_l_lift(d, dd, xi);
    CHECK(zd.quot.section * zlift == dlift);
    // degree-zero class in height-dual position
    const RatMatrix pic = d.cycles.at("pic1").coords;
    const RatMatrix plift = zd.quot.section * zero_cycle_l_lift(d, dd, zd, pic);
    const RatMatrix val = dd.alpha0.transpose() * d.pair.blocks.at(1) * plift;
    CHECK(val.is_zero());
    // zero lifts to zero
    CHECK(zero_cycle_l_lift(d, dd, zd, RatMatrix(2, 1)).is_zero());
}

TEST_CASE("local index checks on slices") {
    CHECK(local_index_check(reduction_graph_model(cyc2_graph()).fiber));
    // smooth single-component slice: the form vanishes identically
    ReductionGraph s;
    s.components = 1;
    s.intersection = RatMatrix::from_rows({{Rat(0)}});
    s.l_degrees = {Rat(1)};
    CHECK(local_index_check(reduction_graph_model(s).fiber));
    // positive-definite fake slice: flip the sign of the intersection matrix
    auto fake = reduction_graph_model(cyc2_graph()).fiber;
    set_block(fake.conn, 1, RatMatrix::from_rows({{Rat(2), Rat(-2)}, {Rat(-2), Rat(2)}}));
    CHECK(!local_index_check(fake));
}
