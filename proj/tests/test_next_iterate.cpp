#include <doctest.h>

#include <cmath>

#include "augmap/next_iterate.hpp"
#include "augmap/regions.hpp"

using namespace augmap;

namespace {

const CompetitionParams kFig4b{0.5, 0.625, 0.5, 2.0, 1.0, 1.0};
const CompetitionParams kFig5b{0.5, 2.0, 2.0, 1.3, 1.0, 3.0};
const CompetitionParams kFig6b{2.0, 2.0, 1.0, 1.0, 1.0, 1.0};
const CompetitionParams kOnes{1, 1, 1, 1, 1, 1};

CompetitionParams random_params(SplitMix64& rng) {
    return {rng.uniform(0.2, 3), rng.uniform(0.2, 3), rng.uniform(0.2, 3),
            rng.uniform(0.2, 3), rng.uniform(0.2, 3), rng.uniform(0.2, 3)};
}

}  // namespace

TEST_CASE("both operators vanish at the coexistence equilibrium") {
    const PlanarMap m = make_competition(kFig6b);
    auto [h, k] = competition_nullclines(kFig6b);
    const Point estar{2.0 / 3, 2.0 / 3};
    CHECK(std::abs(next_iterate_operator(m, h)(estar)) < 1e-12);
    CHECK(std::abs(next_iterate_operator(m, k)(estar)) < 1e-12);
}

TEST_CASE("the h-operator is negative along the x-axis below the carrying capacity") {
    for (const auto& p : {kFig4b, kFig5b, kFig6b}) {
        const PlanarMap m = make_competition(p);
        auto [h, k] = competition_nullclines(p);
        const NextIterateOperator Lh = next_iterate_operator(m, h);
        for (int i = 1; i < 40; ++i) {
            const double x = p.K1 * i / 40.0;
            CHECK(Lh({x, 0.0}) < 0.0);
        }
    }
}

TEST_CASE("operator signs match both the image side and the region table") {
    const PlanarMap m = make_competition(kFig6b);
    const auto ncs = model_nullclines(m);
    const NextIterateOperator Lh = next_iterate_operator(m, ncs[0]);
    const NextIterateOperator Lk = next_iterate_operator(m, ncs[1]);
    const Point p{0.2, 0.2};

    const Point q = step(m, p);
    CHECK((Lh(p) > 0) == (q.y > ncs[0].eval(q.x)));
    CHECK((Lk(p) > 0) == (q.y > ncs[1].eval(q.x)));

    TraceConfig tc;
    tc.bbox = m.domain;
    tc.grid_nx = tc.grid_ny = 200;
    const Decomposition dec = decompose(m, ncs, tc, true);
    const GridSpec& g = dec.grid;
    const int cell = g.cell_index(static_cast<int>((p.x - g.box.xmin) / g.dx()),
                                  static_cast<int>((p.y - g.box.ymin) / g.dy()));
    const int rid = dec.cell_region[cell];
    REQUIRE(rid >= 0);
    const SignedRegion& reg = dec.regions[rid];
    CHECK(reg.op_signs[0].second == sign_of(Lh(p), 0.0));
    CHECK(reg.op_signs[1].second == sign_of(Lk(p), 0.0));
}

TEST_CASE("degenerate case quadratics: leading coefficient and reduced branches") {
    const QuadraticRootCoeffs q = competition_quadratics(kOnes);
    CHECK(q.a2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q.a2 > 0.0);

    const Box win{0, 0, 1.2, 1.2};
    const auto branches = closed_form_root_curves(kOnes, win);
    auto [h, k] = competition_nullclines(kOnes);
    for (const auto& br : branches) {
        if (br.id == BranchId::rh1) {
            CHECK(br.in_window);
            for (int i = 0; i <= 100; ++i) {
                const double x = i / 100.0;
                const BranchValue v = br.eval(x);
                REQUIRE(v.ok);
                CHECK(v.value == doctest::Approx(h.eval(x)).epsilon(1e-12));
            }
        }
        if (br.id == BranchId::rh2) {
            CHECK(!br.in_window);
            for (int i = 0; i <= 100; ++i) {
                const double x = i / 100.0;
                const BranchValue v = br.eval(x);
                REQUIRE(v.ok);
                CHECK(v.value == doctest::Approx(-(x + 1.0)).epsilon(1e-12));
                CHECK(v.value < 0.0);
            }
        }
    }
}

TEST_CASE("a0 vanishes at the carrying capacity") {
    SplitMix64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const CompetitionParams p = random_params(rng);
        const QuadraticRootCoeffs q = competition_quadratics(p);
        CHECK(std::abs(q.a0(p.K1)) < 1e-12 * (1 + std::abs(q.a0(0.0))));
    }
}

TEST_CASE("quotient form equals the compositional operator") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const CompetitionParams p = random_params(rng);
        const PlanarMap m = make_competition(p);
        auto [h, k] = competition_nullclines(p);
        const NextIterateOperator Lh = next_iterate_operator(m, h);
        const NextIterateOperator Lk = next_iterate_operator(m, k);
        for (int i = 0; i < 100; ++i) {
            const Point pt{rng.uniform(0, 3), rng.uniform(0, 3)};
            const double ch = Lh(pt), qh = quotient_Lh(p, pt.x, pt.y);
            const double ck = Lk(pt), qk = quotient_Lk(p, pt.x, pt.y);
            CHECK(std::abs(ch - qh) < 1e-9 * (1 + std::abs(ch)));
            CHECK(std::abs(ck - qk) < 1e-9 * (1 + std::abs(ck)));
        }
    }
}

TEST_CASE("the two quadratic forms of each numerator agree") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const CompetitionParams p = random_params(rng);
        const QuadraticRootCoeffs q = competition_quadratics(p);
        for (int i = 0; i < 100; ++i) {
            const double x = rng.uniform(0, 3), y = rng.uniform(0, 3);
            const double nh_a = numerator_h(q, x, y);
            const double nh_A = numerator_h_xform(q, x, y);
            const double nk_b = numerator_k(q, x, y);
            const double nk_B = numerator_k_xform(q, x, y);
            CHECK(std::abs(nh_a - nh_A) < 1e-9 * (1 + std::abs(nh_a)));
            CHECK(std::abs(nk_b - nk_B) < 1e-9 * (1 + std::abs(nk_b)));
        }
    }
}

TEST_CASE("exclusion case: the positive h-branch stays below the h-nullcline") {
    const Box win{0, 0, 0.75, 2.4};
    const auto branches = closed_form_root_curves(kFig4b, win);
    auto [h, k] = competition_nullclines(kFig4b);
    for (const auto& br : branches) {
        if (br.id != BranchId::rh1) continue;
        for (int i = 1; i < 100; ++i) {
            const double x = kFig4b.K1 * i / 100.0;
            const BranchValue v = br.eval(x);
            REQUIRE(v.ok);
            CHECK(v.value < h.eval(x));
        }
    }
}

TEST_CASE("branch points satisfy the operator to 1e-8") {
    const PlanarMap m = make_competition(kFig6b);
    auto [h, k] = competition_nullclines(kFig6b);
    const NextIterateOperator Lh = next_iterate_operator(m, h);
    const NextIterateOperator Lk = next_iterate_operator(m, k);
    const Box win = m.domain;
    long represented = 0;
    for (const auto& br : closed_form_root_curves(kFig6b, win)) {
        const NextIterateOperator& op = br.nullcline_label == "h" ? Lh : Lk;
        const bool in_x = br.orientation == Orientation::ExplicitInX;
        for (int i = 0; i <= 100; ++i) {
            const double t = (in_x ? win.xmax : win.ymax) * i / 100.0;
            const BranchValue v = br.eval(t);
            if (!v.ok) continue;
            const Point pt = in_x ? Point{t, v.value} : Point{v.value, t};
            if (!win.contains(pt)) continue;  // branch leaves the quadrant window
            CHECK(std::abs(op(pt)) < 1e-8);
            ++represented;
        }
    }
    CHECK(represented > 100);
}

TEST_CASE("zeros of the operator along its nullcline are the equilibria there") {
    {
        const PlanarMap m = make_competition(kFig6b);
        auto [h, k] = competition_nullclines(kFig6b);
        const auto scan = root_set_nullcline_intersections(
            m, h, next_iterate_operator(m, h), m.domain);
        REQUIRE(!scan.identically_zero);
        REQUIRE(scan.zeros.size() == 2);
        CHECK(dist_inf(scan.zeros[0], {2.0 / 3, 2.0 / 3}) < 1e-8);
        CHECK(dist_inf(scan.zeros[1], {1.0, 0.0}) < 1e-8);
        for (const Point& z : scan.zeros) {
            CHECK(dist_inf(step(m, z), z) < 1e-8);
        }
    }
    {
        const PlanarMap m = make_competition(kFig4b);
        auto [h, k] = competition_nullclines(kFig4b);
        const auto scan = root_set_nullcline_intersections(
            m, h, next_iterate_operator(m, h), m.domain);
        REQUIRE(scan.zeros.size() == 1);
        CHECK(dist_inf(scan.zeros[0], {0.5, 0.0}) < 1e-8);
    }
}

TEST_CASE("joint root membership: only the coexistence point in its rectangle") {
    const Point estar{2.0 / 3, 2.0 / 3};
    CHECK(joint_root_preimage_check(kFig6b, estar));
    const PlanarMap m = make_competition(kFig6b);
    CHECK(dist_inf(step(m, estar), estar) < 1e-12);

    R2Sequence seq(31);
    long hits = 0;
    for (int i = 0; i < 10000; ++i) {
        const Point q = seq.next_in(Box{0, 0, 2.0 / 3, 2.0 / 3});
        if (q.x <= 0 || q.y <= 0 || dist_inf(q, estar) < 1e-9) continue;
        if (joint_root_preimage_check(kFig6b, q)) {
            ++hits;
            // any joint zero must map to an equilibrium in one step
            const Point img = step(m, q);
            CHECK(dist_inf(step(m, img), img) < 1e-8);
        }
    }
    CHECK(hits == 0);
}

TEST_CASE("sign semantics: operator sign equals the side of the image, all families") {
    struct Case {
        PlanarMap map;
    };
    const std::vector<PlanarMap> maps = {
        make_competition(kFig5b),
        make_ricker({0.9, 1.6, 0.4, 0.3}),
        make_mutualism({16, 1, 4, 2, 4, 1, 3, 2}),
        make_predprey({1, 1, 1, 1.5, 1}),
    };
    SplitMix64 rng(401);
    for (const PlanarMap& m : maps) {
        const auto ncs = model_nullclines(m);
        for (const NullclineCurve& nc : ncs) {
            const NextIterateOperator op = next_iterate_operator(m, nc);
            long checked = 0;
            for (int i = 0; i < 10000; ++i) {
                const Point p{rng.uniform(1e-3, m.domain.xmax),
                              rng.uniform(1e-3, m.domain.ymax)};
                const double v = op(p);
                if (std::abs(v) <= 1e-9) continue;
                const Point q = step(m, p);
                const int side = nullcline_side(nc, q, 0.0);
                CHECK((v > 0) == (side > 0));
                ++checked;
            }
            CHECK(checked > 9000);
        }
    }
}

TEST_CASE("on-nullcline operator signs follow the pointwise ordering lemma") {
    SplitMix64 rng(73);
    long applied = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const CompetitionParams p = random_params(rng);
        const double c12 = p.r1 / p.alpha1 - p.K2;
        const double c21 = p.r2 / p.alpha2 - p.K1;
        if (std::abs(c12) < 1e-3 || std::abs(c21) < 1e-3) continue;
        const PlanarMap m = make_competition(p);
        auto [h, k] = competition_nullclines(p);
        const NextIterateOperator Lh = next_iterate_operator(m, h);
        const NextIterateOperator Lk = next_iterate_operator(m, k);
        for (int i = 0; i < 50; ++i) {
            const double x = rng.uniform(1e-6, std::max(p.K1, p.r2 / p.alpha2));
            const double hv = h.eval(x), kv = k.eval(x);
            if (std::abs(hv - kv) < 1e-9) continue;
            if (hv < kv) {
                if (x < p.K1 && hv > 0) {
                    CHECK(Lh({x, hv}) > 0.0);
                    ++applied;
                }
                if (x < p.r2 / p.alpha2) {
                    CHECK(Lk({x, kv}) < 0.0);
                    ++applied;
                }
            } else {
                if (x < p.K1) {
                    CHECK(Lh({x, hv}) < 0.0);
                    ++applied;
                }
                if (x < p.r2 / p.alpha2 && kv > 0) {
                    CHECK(Lk({x, kv}) > 0.0);
                    ++applied;
                }
            }
        }
    }
    CHECK(applied > 2000);
}
