#include <doctest.h>

#include <cmath>

#include "augmap/nullclines.hpp"

using namespace augmap;

namespace {

const CompetitionParams kFig4b{0.5, 0.625, 0.5, 2.0, 1.0, 1.0};
const CompetitionParams kFig5b{0.5, 2.0, 2.0, 1.3, 1.0, 3.0};
const CompetitionParams kFig6b{2.0, 2.0, 1.0, 1.0, 1.0, 1.0};

// random parameter draw with prescribed efficiency signs
CompetitionParams draw_params(SplitMix64& rng, int sign12, int sign21) {
    for (int tries = 0; tries < 10000; ++tries) {
        CompetitionParams p{rng.uniform(0.2, 3), rng.uniform(0.2, 3),
                            rng.uniform(0.2, 3), rng.uniform(0.2, 3),
                            rng.uniform(0.2, 3), rng.uniform(0.2, 3)};
        const double c12 = p.r1 / p.alpha1 - p.K2;
        const double c21 = p.r2 / p.alpha2 - p.K1;
        if (std::abs(c12) < 1e-3 || std::abs(c21) < 1e-3) continue;
        if ((c12 > 0) == (sign12 > 0) && (c21 > 0) == (sign21 > 0)) return p;
    }
    REQUIRE(false);
    return {};
}

}  // namespace

TEST_CASE("competition nullclines: intercepts and roots") {
    for (const auto& p : {kFig4b, kFig5b, kFig6b}) {
        auto [h, k] = competition_nullclines(p);
        CHECK(h.eval(p.K1) == 0.0);
        CHECK(h.eval(0.0) == doctest::Approx(p.r1 / p.alpha1).epsilon(1e-15));
        CHECK(k.eval(0.0) == doctest::Approx(p.K2).epsilon(1e-15));
        CHECK(h.annihilates == Annihilates::XEquation);
        CHECK(k.annihilates == Annihilates::YEquation);
    }
}

TEST_CASE("bistable case: nullcline crossing matches the closed-form equilibrium") {
    const CompetitionParams p = kFig5b;
    auto [h, k] = competition_nullclines(p);
    // independent route: intersect the two lines directly
    const double slope_h = -p.r1 / (p.alpha1 * p.K1);
    const double slope_k = -p.K2 * p.alpha2 / p.r2;
    const double xcross = (k.eval(0.0) - h.eval(0.0)) / (slope_h - slope_k);
    CHECK(xcross == doctest::Approx(8.0 / 17.0).epsilon(1e-12));
    CHECK(xcross > 0.0);
    CHECK(xcross < p.K1);

    const EquilibriumSet eqs = equilibria(make_competition(p));
    bool found = false;
    for (const auto& e : eqs.isolated) {
        if (e.kind == EquilibriumKind::Interior) {
            found = true;
            CHECK(e.p.x == doctest::Approx(xcross).epsilon(1e-12));
            CHECK(e.p.y == doctest::Approx(h.eval(xcross)).epsilon(1e-12));
        }
    }
    CHECK(found);
}

TEST_CASE("ricker and predprey nullcline shapes") {
    const PlanarMap r = make_ricker({0.9, 1.6, 0.4, 0.3});
    const auto rn = model_nullclines(r);
    REQUIRE(rn.size() == 2);
    CHECK(rn[0].eval(0.0) == doctest::Approx(0.9 / 0.4).epsilon(1e-15));
    CHECK(rn[1].eval(0.0) == doctest::Approx(1.6).epsilon(1e-15));

    const PlanarMap pp = make_predprey({1, 1, 1, 0.5, 1});
    const auto pn = model_nullclines(pp);
    REQUIRE(pn.size() == 2);
    CHECK(pn[1].orientation == Orientation::ExplicitInY);
    for (double y : {0.0, 0.3, 1.2}) CHECK(pn[1].eval(y) == 2.0);  // X = d/gamma

    const PlanarMap g = make_generic([](double x, double) { return x; },
                                     [](double, double y) { return y; },
                                     Box{0, 0, 1, 1});
    CHECK_THROWS_AS(model_nullclines(g), UnsupportedFamily);
}

TEST_CASE("mutualism nullcline intersection is an interior fixed point") {
    const PlanarMap m = make_mutualism({16, 1, 4, 2, 4, 1, 3, 2});
    const auto ncs = model_nullclines(m);
    // solve the two lines directly
    // (A-a+BX)/b = (c-C+dX)/D  ->  X = 25/3
    const double xs = 25.0 / 3.0, ys = 14.0 / 3.0;
    CHECK(ncs[0].eval(xs) == doctest::Approx(ys).epsilon(1e-13));
    CHECK(ncs[1].eval(xs) == doctest::Approx(ys).epsilon(1e-13));
    CHECK(xs > 0.0);
    CHECK(ys > 0.0);
    CHECK(dist_inf(step(m, {xs, ys}), {xs, ys}) < 1e-10);
}

TEST_CASE("equilibria: coexistence case lists all four points") {
    const EquilibriumSet eqs = equilibria(make_competition(kFig6b));
    REQUIRE(eqs.isolated.size() == 4);
    CHECK(!eqs.continuum);
    auto has = [&](Point q) {
        for (const auto& e : eqs.isolated) {
            if (dist_inf(e.p, q) < 1e-12) return true;
        }
        return false;
    };
    CHECK(has({0, 0}));
    CHECK(has({1, 0}));
    CHECK(has({0, 1}));
    CHECK(has({2.0 / 3, 2.0 / 3}));
}

TEST_CASE("equilibria: exclusion case has no interior point") {
    const EquilibriumSet eqs = equilibria(make_competition(kFig4b));
    CHECK(eqs.isolated.size() == 3);
    for (const auto& e : eqs.isolated) CHECK(e.kind != EquilibriumKind::Interior);
    const double c12 = kFig4b.r1 / kFig4b.alpha1 - kFig4b.K2;
    const double c21 = kFig4b.r2 / kFig4b.alpha2 - kFig4b.K1;
    CHECK(c12 * c21 < 0.0);
}

TEST_CASE("equilibria: coincident nullclines produce the segment") {
    // r1/alpha1 = K2 and r2/alpha2 = K1 by construction
    const CompetitionParams p{3.0, 1.4, 0.7, 1.5, 2.0, 2.0};
    const EquilibriumSet eqs = equilibria(make_competition(p));
    REQUIRE(eqs.continuum.has_value());
    CHECK(dist_inf(eqs.continuum->a, {0.0, 1.5}) < 1e-12);
    CHECK(dist_inf(eqs.continuum->b, {0.7, 0.0}) < 1e-12);
}

TEST_CASE("direction signs match the side of the nullclines") {
    const PlanarMap m = make_competition(kFig6b);
    auto [h, k] = competition_nullclines(kFig6b);

    const DirectionSigns on_h = direction_signs(m, {0.3, h.eval(0.3)}, 1e-12);
    CHECK(on_h.dx == Sign::Zero);

    const DirectionSigns low = direction_signs(m, {0.1, 0.1});
    CHECK(low.dx == Sign::Plus);
    CHECK(low.dy == Sign::Plus);

    const DirectionSigns high = direction_signs(m, {0.9, 0.9});
    CHECK(high.dx == Sign::Minus);
    CHECK(high.dy == Sign::Minus);
}

TEST_CASE("direction signs agree with the analytic sign cases on a grid") {
    const PlanarMap m = make_competition(kFig6b);
    auto [h, k] = competition_nullclines(kFig6b);
    const Box box = m.domain;
    const int n = 200;
    const double band = 1.5 * std::hypot(box.width() / n, box.height() / n);
    long checked = 0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Point p{box.xmin + (i + 0.5) * box.width() / n,
                          box.ymin + (j + 0.5) * box.height() / n};
            if (std::abs(p.y - h.eval(p.x)) < band ||
                std::abs(p.y - k.eval(p.x)) < band) {
                continue;
            }
            ++checked;
            const DirectionSigns ds = direction_signs(m, p, 1e-12);
            CHECK(ds.dx == (p.y < h.eval(p.x) ? Sign::Plus : Sign::Minus));
            CHECK(ds.dy == (p.y < k.eval(p.x) ? Sign::Plus : Sign::Minus));
        }
    }
    CHECK(checked > 30000);
}

TEST_CASE("nullcline residual: built-in curves satisfy their defining equations") {
    const std::vector<PlanarMap> maps = {
        make_competition(kFig5b),
        make_ricker({0.6, 0.6, 0.35, 0.4}),
        make_mutualism({8, 1, 4, 2, 4.8, 1, 3, 2}),
        make_predprey({1, 1, 1, 1.5, 1}),
    };
    for (const PlanarMap& m : maps) {
        for (const NullclineCurve& nc : model_nullclines(m)) {
            for (int i = 0; i <= 1000; ++i) {
                const double t = nc.dom_lo + (nc.dom_hi - nc.dom_lo) * i / 1000.0;
                const double v = nc.eval(t);
                if (nc.orientation == Orientation::ExplicitInX) {
                    if (v < 0) continue;  // outside the quadrant
                    if (nc.annihilates == Annihilates::XEquation) {
                        CHECK(std::abs(m.F(t, v) - t) < 1e-10);
                    } else {
                        CHECK(std::abs(m.G(t, v) - v) < 1e-10);
                    }
                } else {
                    CHECK(std::abs(m.G(v, t) - t) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("equilibrium residual below 1e-10 for every built-in family") {
    const std::vector<PlanarMap> maps = {
        make_competition(kFig5b),
        make_competition(kFig6b),
        make_ricker({0.6, 0.6, 0.35, 0.4}),
        make_mutualism({16, 1, 4, 2, 4, 1, 3, 2}),
        make_predprey({1, 1, 1, 1.5, 1}),
    };
    for (const PlanarMap& m : maps) {
        const EquilibriumSet eqs = equilibria(m);
        CHECK(!eqs.isolated.empty());
        for (const auto& e : eqs.isolated) {
            CHECK(dist_inf(step(m, e.p), e.p) < 1e-10);
        }
    }
}

TEST_CASE("closed-form coexistence point lies in (0,K1)x(0,K2) in both crossing cases") {
    SplitMix64 rng(99);
    for (int sign : {+1, -1}) {
        for (int i = 0; i < 1000; ++i) {
            const CompetitionParams p = draw_params(rng, sign, sign);
            const EquilibriumSet eqs = equilibria(make_competition(p));
            bool found = false;
            for (const auto& e : eqs.isolated) {
                if (e.kind != EquilibriumKind::Interior) continue;
                found = true;
                CHECK(e.p.x > 0.0);
                CHECK(e.p.x < p.K1);
                CHECK(e.p.y > 0.0);
                CHECK(e.p.y < p.K2);
            }
            CHECK(found);
        }
    }
}

TEST_CASE("generic maps find equilibria from traced nullcline intersections") {
    // competition disguised as a generic map
    const CompetitionParams p = kFig6b;
    const PlanarMap ref = make_competition(p);
    PlanarMap g = make_generic(ref.F, ref.G, ref.domain);
    const EquilibriumSet eqs = equilibria(g);
    bool found_interior = false;
    for (const auto& e : eqs.isolated) {
        if (dist_inf(e.p, {2.0 / 3, 2.0 / 3}) < 1e-9) found_interior = true;
        CHECK(dist_inf(step(g, e.p), e.p) < 1e-10);
    }
    CHECK(found_interior);
}
