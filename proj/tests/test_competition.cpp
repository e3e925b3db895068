#include <doctest.h>

#include <cmath>

#include "augmap/competition.hpp"

using namespace augmap;

namespace {

const CompetitionParams kFig4b{0.5, 0.625, 0.5, 2.0, 1.0, 1.0};
const CompetitionParams kFig5b{0.5, 2.0, 2.0, 1.3, 1.0, 3.0};
const CompetitionParams kFig6b{2.0, 2.0, 1.0, 1.0, 1.0, 1.0};
const CompetitionParams kOnes{1, 1, 1, 1, 1, 1};

CompetitionParams draw_with_signs(SplitMix64& rng, int s12, int s21) {
    while (true) {
        CompetitionParams p{rng.uniform(0.2, 3), rng.uniform(0.2, 3),
                            rng.uniform(0.2, 3), rng.uniform(0.2, 3),
                            rng.uniform(0.2, 3), rng.uniform(0.2, 3)};
        const EfficiencyPair e = efficiencies(p);
        if (std::abs(e.c12) < 1e-3 || std::abs(e.c21) < 1e-3) continue;
        if ((e.c12 > 0) == (s12 > 0) && (e.c21 > 0) == (s21 > 0)) return p;
    }
}

long count_for(const ConvergenceStats& st, const std::string& label) {
    for (const auto& [l, c] : st.attractor_counts) {
        if (l == label) return c;
    }
    return -1;
}

}  // namespace

TEST_CASE("efficiencies are exact arithmetic") {
    const EfficiencyPair e4 = efficiencies(kFig4b);
    CHECK(e4.c12 == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(e4.c21 == doctest::Approx(0.125).epsilon(1e-15));

    const EfficiencyPair e6 = efficiencies(kFig6b);
    CHECK(e6.c12 == 1.0);
    CHECK(e6.c21 == 1.0);

    const CompetitionParams degenerate{3.0, 1.4, 0.7, 1.5, 2.0, 2.0};
    const EfficiencyPair e0 = efficiencies(degenerate);
    CHECK(e0.c12 == 0.0);
    CHECK(e0.c21 == 0.0);
}

TEST_CASE("classification is a pure function of the efficiency signs") {
    SplitMix64 rng(2718);
    struct Cell {
        int s12, s21;
        CompetitionCase expect;
    };
    const Cell cells[] = {
        {-1, +1, CompetitionCase::ExclusionYWins},
        {+1, -1, CompetitionCase::ExclusionXWins},
        {-1, -1, CompetitionCase::Bistable},
        {+1, +1, CompetitionCase::Coexistence},
    };
    for (const Cell& cell : cells) {
        for (int i = 0; i < 200; ++i) {
            const CompetitionParams p = draw_with_signs(rng, cell.s12, cell.s21);
            CHECK(classify(p).cse == cell.expect);
        }
    }
    for (int i = 0; i < 200; ++i) {
        // force both efficiencies to zero
        CompetitionParams p{rng.uniform(0.2, 3), rng.uniform(0.2, 3), 0, 0,
                            rng.uniform(0.2, 3), rng.uniform(0.2, 3)};
        p.K2 = p.r1 / p.alpha1;
        p.K1 = p.r2 / p.alpha2;
        const CasePrediction pred = classify(p);
        CHECK(pred.cse == CompetitionCase::DegenerateLine);
        REQUIRE(pred.attractors.size() == 1);
        CHECK(pred.attractors[0].is_segment);
    }
}

TEST_CASE("case predictions name the figures' attractors") {
    const CasePrediction c4 = classify(kFig4b);
    CHECK(c4.cse == CompetitionCase::ExclusionYWins);
    REQUIRE(c4.attractors.size() == 1);
    CHECK(c4.attractors[0].label == "E2");
    CHECK(dist_inf(c4.attractors[0].point, {0, 2}) < 1e-15);

    const CasePrediction c5 = classify(kFig5b);
    CHECK(c5.cse == CompetitionCase::Bistable);
    REQUIRE(c5.attractors.size() == 3);
    CHECK(c5.attractors[0].label == "E1");
    CHECK(c5.attractors[1].label == "E2");
    CHECK(dist_inf(c5.attractors[1].point, {0, 1.3}) < 1e-15);
    bool estar_unstable = false;
    for (const auto& u : c5.unstable) {
        if (u.label == "E*") estar_unstable = true;
    }
    CHECK(estar_unstable);

    const CasePrediction c6 = classify(kFig6b);
    CHECK(c6.cse == CompetitionCase::Coexistence);
    REQUIRE(c6.attractors.size() == 1);
    CHECK(c6.attractors[0].label == "E*");
    CHECK(dist_inf(c6.attractors[0].point, {2.0 / 3, 2.0 / 3}) < 1e-15);
}

TEST_CASE("sign tables hold on a 200x200 grid for all four figure cases") {
    for (const auto& p : {kFig4b, kFig5b, kFig6b, kOnes}) {
        const SignLemmaReport rep = verify_sign_lemmas(p, 200);
        CHECK(rep.points_checked > 10000);
        CHECK(rep.violations.empty());
    }
}

TEST_CASE("sign tables also hold for the mirrored exclusion case") {
    // swap species roles in the exclusion example
    const CompetitionParams mirrored{0.625, 0.5, 2.0, 0.5, 1.0, 1.0};
    CHECK(classify(mirrored).cse == CompetitionCase::ExclusionXWins);
    const SignLemmaReport rep = verify_sign_lemmas(mirrored, 200);
    CHECK(rep.points_checked > 10000);
    CHECK(rep.violations.empty());
}

TEST_CASE("sampled global outcomes follow the case predictions") {
    OutcomeOptions small;
    small.n_orbits = 100;
    small.max_steps = 5000;

    const ConvergenceStats s4 = verify_global_outcome(kFig4b, small);
    CHECK(count_for(s4, "E2") == 100);
    CHECK(s4.unresolved == 0);

    const ConvergenceStats s5 = verify_global_outcome(kFig5b, small);
    CHECK(s5.unresolved == 0);
    CHECK(count_for(s5, "E1") > 0);
    CHECK(count_for(s5, "E2") > 0);
    CHECK(count_for(s5, "E1") + count_for(s5, "E2") + count_for(s5, "E*") == 100);

    const ConvergenceStats s6 = verify_global_outcome(kFig6b, small);
    CHECK(count_for(s6, "E*") == 100);

    const ConvergenceStats s1 = verify_global_outcome(kOnes, small);
    CHECK(count_for(s1, "E*_X") == 100);
}

TEST_CASE("swapping the species indices mirrors every orbit attribution") {
    const CompetitionParams p = kFig5b;
    const CompetitionParams swapped{p.r2, p.r1, p.K2, p.K1, p.alpha2, p.alpha1};
    const PlanarMap m = make_competition(p);
    const PlanarMap ms = make_competition(swapped);
    const CasePrediction pred = classify(p);
    const CasePrediction pred_s = classify(swapped);

    auto mirror_label = [](const std::string& l) {
        if (l == "E1") return std::string("E2");
        if (l == "E2") return std::string("E1");
        return l;
    };
    R2Sequence seq(9);
    for (int i = 0; i < 100; ++i) {
        const Point p0 = seq.next_in(m.domain);
        if (p0.x <= 0 || p0.y <= 0) continue;
        const OrbitAttribution a = attribute_orbit(m, pred, p0, 5000, 1e-6, 100);
        const OrbitAttribution b =
            attribute_orbit(ms, pred_s, {p0.y, p0.x}, 5000, 1e-6, 100);
        REQUIRE(a.label.has_value());
        REQUIRE(b.label.has_value());
        CHECK(mirror_label(*a.label) == *b.label);
    }
}

TEST_CASE("axis orbits converge monotonically to their carrying capacities") {
    const PlanarMap m = make_competition(kFig5b);
    for (double x0 : {0.1, 6.0}) {
        Point p{x0, 0.0};
        double prev = p.x;
        const bool increasing = x0 < kFig5b.K1;
        for (int t = 0; t < 2000; ++t) {
            p = step(m, p);
            CHECK(p.y == 0.0);
            if (increasing) CHECK(p.x >= prev);
            else CHECK(p.x <= prev);
            prev = p.x;
        }
        CHECK(std::abs(p.x - kFig5b.K1) < 1e-9);
    }
    for (double y0 : {0.1, 4.0}) {
        Point p{0.0, y0};
        for (int t = 0; t < 2000; ++t) p = step(m, p);
        CHECK(std::abs(p.y - kFig5b.K2) < 1e-9);
    }
}

TEST_CASE("in the exclusion case the losing boundary point repels interior orbits") {
    // attraction along the axis, repulsion into the interior
    const PlanarMap m = make_competition(kFig4b);
    const Point e1{kFig4b.K1, 0.0};
    Point p{kFig4b.K1, 1e-4};
    bool escaped = false;
    for (int t = 0; t < 5000 && !escaped; ++t) {
        p = step(m, p);
        if (dist_inf(p, e1) > 0.25) escaped = true;
    }
    CHECK(escaped);
}

TEST_CASE("closed-form coexistence point is fixed to 1e-10 across random draws") {
    SplitMix64 rng(31415);
    for (int s : {+1, -1}) {
        for (int i = 0; i < 1000; ++i) {
            const CompetitionParams p = draw_with_signs(rng, s, s);
            const PlanarMap m = make_competition(p);
            const CasePrediction pred = classify(p);
            const AttractorDesc* estar = nullptr;
            for (const auto& a : pred.attractors) {
                if (a.label == "E*") estar = &a;
            }
            REQUIRE(estar != nullptr);
            CHECK(dist_inf(step(m, estar->point), estar->point) < 1e-10);
        }
    }
}

TEST_CASE("degenerate-line demo: unit eigenvalue, trapped rectangles, segment limits") {
    const Case1Demo demo = case1_stability_demo(kOnes);
    REQUIRE(!demo.eigs.empty());
    for (const auto& e : demo.eigs) {
        CHECK(std::abs(e.lambda1 - 1.0) < 1e-9);
        CHECK(std::abs(e.lambda2 - 0.5) < 1e-9);
    }
    CHECK(demo.rectangle_invariant);
    CHECK(demo.exits == 0);
    CHECK(demo.starts >= 150);
    CHECK(demo.max_limit_to_segment < 1e-6);
}
