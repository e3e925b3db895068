#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "augmap/next_iterate.hpp"
#include "augmap/trace.hpp"

using namespace augmap;

namespace {

// directed Hausdorff distance between point clouds
double dir_hausdorff(const std::vector<Point>& A, const std::vector<Point>& B) {
    double worst = 0.0;
    for (const Point& a : A) {
        double best = std::numeric_limits<double>::infinity();
        for (const Point& b : B) best = std::min(best, dist2(a, b));
        worst = std::max(worst, best);
    }
    return worst;
}

std::vector<Point> all_vertices(const TraceResult& tr) {
    std::vector<Point> out;
    for (const auto& c : tr.curves) out.insert(out.end(), c.pts.begin(), c.pts.end());
    return out;
}

}  // namespace

TEST_CASE("quarter circle: single chain, tiny residuals, correct arc length") {
    TraceConfig cfg;
    cfg.bbox = {0, 0, 2, 2};
    const TraceResult tr =
        trace_zero_set([](double x, double y) { return x * x + y * y - 1.0; }, cfg);
    REQUIRE(tr.curves.size() == 1);
    CHECK(tr.masked_cells == 0);
    const Polyline& c = tr.curves.front();
    CHECK(!c.closed);
    for (const Point& p : c.pts) {
        CHECK(std::abs(p.x * p.x + p.y * p.y - 1.0) < 1e-9);
    }
    CHECK(std::abs(c.length() - M_PI / 2) < 0.01 * M_PI / 2);
}

TEST_CASE("empty zero set is a legal result") {
    TraceConfig cfg;
    cfg.bbox = {0, 0, 1, 1};
    const TraceResult tr =
        trace_zero_set([](double x, double y) { return 1.0 + x + y; }, cfg);
    CHECK(tr.curves.empty());
    CHECK(tr.masked_cells == 0);
}

TEST_CASE("non-finite cells are masked and reported, not fatal") {
    TraceConfig cfg;
    cfg.bbox = {0, 0, 2, 2};
    cfg.grid_nx = cfg.grid_ny = 64;
    const TraceResult tr = trace_zero_set(
        [](double x, double) {
            if (x < 0.5) return std::numeric_limits<double>::quiet_NaN();
            return x - 1.5;
        },
        cfg);
    CHECK(tr.masked_cells > 0);
    REQUIRE(!tr.curves.empty());
    for (const auto& c : tr.curves) {
        for (const Point& p : c.pts) CHECK(std::abs(p.x - 1.5) < 1e-9);
    }
}

TEST_CASE("saddle resolution rule") {
    CHECK(resolve_saddle(0.5, 1e-10) == SaddleResolution::ConnectAroundPositiveCenter);
    CHECK(resolve_saddle(-0.5, 1e-10) == SaddleResolution::ConnectAroundNegativeCenter);
    CHECK(resolve_saddle(1e-12, 1e-10) == SaddleResolution::Subdivide);
    CHECK(resolve_saddle(0.0, 1e-10) == SaddleResolution::Subdivide);
}

TEST_CASE("ambiguous cells with an exactly-zero center subdivide without crashing") {
    // (x-1)(y-1) has a saddle exactly on a grid node pattern for a 16x16 grid
    TraceConfig cfg;
    cfg.bbox = {0, 0, 2, 2};
    cfg.grid_nx = cfg.grid_ny = 16;
    const TraceResult tr = trace_zero_set(
        [](double x, double y) { return (x - 1.0) * (y - 1.0); }, cfg);
    REQUIRE(!tr.curves.empty());
    for (const auto& c : tr.curves) {
        for (const Point& p : c.pts) {
            CHECK(std::abs((p.x - 1.0) * (p.y - 1.0)) < 1e-9);
        }
    }
}

TEST_CASE("traced competition root-curves match the closed forms") {
    const CompetitionParams p{2, 2, 1, 1, 1, 1};
    const PlanarMap m = make_competition(p);
    const auto ncs = model_nullclines(m);
    TraceConfig cfg;
    cfg.bbox = m.domain;
    cfg.grid_nx = cfg.grid_ny = 256;
    const double cell_diag =
        std::hypot(cfg.bbox.width() / cfg.grid_nx, cfg.bbox.height() / cfg.grid_ny);
    const auto branches = closed_form_root_curves(p, cfg.bbox);

    for (int which = 0; which < 2; ++which) {
        const NextIterateOperator op = next_iterate_operator(m, ncs[which]);
        const TraceResult tr = trace_zero_set(
            [&op](double x, double y) { return op(Point{x, y}); }, cfg);
        const std::vector<Point> traced = all_vertices(tr);
        REQUIRE(!traced.empty());

        std::vector<Point> closed;
        for (const auto& br : branches) {
            if (br.nullcline_label != ncs[which].label) continue;
            const bool in_x = br.orientation == Orientation::ExplicitInX;
            for (int i = 0; i <= 4096; ++i) {
                const double t = (in_x ? cfg.bbox.xmax : cfg.bbox.ymax) * i / 4096.0;
                const BranchValue v = br.eval(t);
                if (!v.ok) continue;
                const Point q = in_x ? Point{t, v.value} : Point{v.value, t};
                if (cfg.bbox.contains(q)) closed.push_back(q);
            }
        }
        CHECK(dir_hausdorff(traced, closed) < cell_diag);
        CHECK(dir_hausdorff(closed, traced) < cell_diag);
    }
}

TEST_CASE("ricker root-curves are neither graphs over X nor over Y") {
    // their root-sets close through the axes: every component enters and
    // leaves the quadrant on an axis, and double-backs in both coordinates
    const PlanarMap m = make_ricker({0.9, 1.6, 0.4, 0.3});
    const auto ncs = model_nullclines(m);
    TraceConfig cfg;
    cfg.bbox = m.domain;
    cfg.grid_nx = cfg.grid_ny = 256;
    bool some_fails_both = false;
    for (const auto& nc : ncs) {
        const NextIterateOperator op = next_iterate_operator(m, nc);
        const TraceResult tr = trace_zero_set(
            [&op](double x, double y) { return op(Point{x, y}); }, cfg);
        REQUIRE(!tr.curves.empty());

        bool fails_some_test = false;
        for (const auto& c : tr.curves) {
            // vertical / horizontal line tests
            std::vector<Point> pts = c.pts;
            std::sort(pts.begin(), pts.end(),
                      [](const Point& a, const Point& b) { return a.x < b.x; });
            bool fails_x = false, fails_y = false;
            for (std::size_t i = 1; i < pts.size(); ++i) {
                if (pts[i].x - pts[i - 1].x < 1e-6 &&
                    std::abs(pts[i].y - pts[i - 1].y) > 0.05) {
                    fails_x = true;
                }
            }
            std::sort(pts.begin(), pts.end(),
                      [](const Point& a, const Point& b) { return a.y < b.y; });
            for (std::size_t i = 1; i < pts.size(); ++i) {
                if (pts[i].y - pts[i - 1].y < 1e-6 &&
                    std::abs(pts[i].x - pts[i - 1].x) > 0.05) {
                    fails_y = true;
                }
            }
            if (fails_x || fails_y) fails_some_test = true;
            if (fails_x && fails_y) some_fails_both = true;

            // the root-sets close through the invariant axes: open chains
            // must start and end on an axis
            const double edge = 1e-6;
            const Point a = c.pts.front(), b = c.pts.back();
            if (!c.closed) {
                CHECK((a.x < edge || a.y < edge));
                CHECK((b.x < edge || b.y < edge));
            }
        }
        CHECK(fails_some_test);  // not a graph in at least one coordinate
    }
    CHECK(some_fails_both);  // and one curve doubles back in both

}

TEST_CASE("mutualism operators trace at least two components each") {
    const PlanarMap m = make_mutualism({16, 1, 4, 2, 4, 1, 3, 2});
    const auto ncs = model_nullclines(m);
    TraceConfig cfg;
    cfg.bbox = {0, 0, 12, 12};
    cfg.grid_nx = cfg.grid_ny = 256;
    for (const auto& nc : ncs) {
        const NextIterateOperator op = next_iterate_operator(m, nc);
        const TraceResult tr = trace_zero_set(
            [&op](double x, double y) { return op(Point{x, y}); }, cfg);
        CHECK(tr.curves.size() >= 2);
    }
}

TEST_CASE("vertex residuals stay below ten times the refine tolerance") {
    const CompetitionParams p{2, 2, 1, 1, 1, 1};
    const PlanarMap m = make_competition(p);
    const auto ncs = model_nullclines(m);
    TraceConfig cfg;
    cfg.bbox = m.domain;
    cfg.grid_nx = cfg.grid_ny = 128;
    const NextIterateOperator op = next_iterate_operator(m, ncs[0]);
    auto f = [&op](double x, double y) { return op(Point{x, y}); };
    const TraceResult tr = trace_zero_set(f, cfg);
    REQUIRE(!tr.curves.empty());
    for (const auto& c : tr.curves) {
        for (const Point& q : c.pts) {
            CHECK(std::abs(f(q.x, q.y)) < 10 * cfg.refine_tol);
        }
    }
}

TEST_CASE("doubling the resolution changes component lengths by less than 2%") {
    const CompetitionParams p{0.5, 2.0, 2.0, 1.3, 1.0, 3.0};
    const PlanarMap m = make_competition(p);
    const auto ncs = model_nullclines(m);
    const NextIterateOperator op = next_iterate_operator(m, ncs[0]);
    auto f = [&op](double x, double y) { return op(Point{x, y}); };

    auto lengths_at = [&](int n) {
        TraceConfig cfg;
        cfg.bbox = m.domain;
        cfg.grid_nx = cfg.grid_ny = n;
        const TraceResult tr = trace_zero_set(f, cfg);
        std::vector<double> lens;
        for (const auto& c : tr.curves) lens.push_back(c.length());
        std::sort(lens.begin(), lens.end());
        return lens;
    };
    const auto lo = lengths_at(256);
    const auto hi = lengths_at(512);
    REQUIRE(lo.size() == hi.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        CHECK(std::abs(hi[i] - lo[i]) < 0.02 * lo[i]);
    }
}

TEST_CASE("trace rejects degenerate configurations") {
    TraceConfig tiny;
    tiny.bbox = {0, 0, 1, 1};
    tiny.grid_nx = 8;
    CHECK_THROWS_AS(trace_zero_set([](double, double) { return 1.0; }, tiny),
                    std::invalid_argument);
    TraceConfig flat;
    flat.bbox = {0, 0, 0, 1};
    CHECK_THROWS_AS(trace_zero_set([](double, double) { return 1.0; }, flat),
                    std::invalid_argument);
}
