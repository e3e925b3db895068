#include "augmap/nullclines.hpp"

#include <algorithm>
#include <cmath>

#include "augmap/trace.hpp"
#include "augmap/util.hpp"

namespace augmap {

const char* to_string(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::Origin: return "origin";
        case EquilibriumKind::BoundaryX: return "boundary_x";
        case EquilibriumKind::BoundaryY: return "boundary_y";
        case EquilibriumKind::Interior: return "interior";
    }
    return "?";
}

int nullcline_side(const NullclineCurve& c, const Point& p, double band) {
    const double s = (c.orientation == Orientation::ExplicitInX)
                         ? p.y - c.eval(p.x)
                         : p.x - c.eval(p.y);
    if (std::abs(s) <= band) return 0;
    return s > 0 ? 1 : -1;
}

std::pair<NullclineCurve, NullclineCurve> competition_nullclines(
    const CompetitionParams& p) {
    NullclineCurve h;
    h.orientation = Orientation::ExplicitInX;
    h.annihilates = Annihilates::XEquation;
    h.eval = [p](double x) { return p.r1 / (p.alpha1 * p.K1) * (p.K1 - x); };
    h.dom_lo = 0.0;
    h.dom_hi = p.K1;
    h.label = "h";

    NullclineCurve k;
    k.orientation = Orientation::ExplicitInX;
    k.annihilates = Annihilates::YEquation;
    k.eval = [p](double x) { return p.K2 / p.r2 * (p.r2 - p.alpha2 * x); };
    k.dom_lo = 0.0;
    k.dom_hi = p.r2 / p.alpha2;
    k.label = "k";
    return {h, k};
}

std::vector<NullclineCurve> model_nullclines(const PlanarMap& map) {
    switch (map.family) {
        case Family::Competition: {
            const auto& p = std::get<CompetitionParams>(map.params);
            auto [h, k] = competition_nullclines(p);
            return {h, k};
        }
        case Family::Ricker: {
            const auto& p = std::get<RickerParams>(map.params);
            NullclineCurve h;
            h.eval = [p](double x) { return (p.K - x) / p.a; };
            h.annihilates = Annihilates::XEquation;
            h.dom_lo = 0.0;
            h.dom_hi = p.K;
            h.label = "h";
            NullclineCurve k;
            k.eval = [p](double x) { return p.L - p.b * x; };
            k.annihilates = Annihilates::YEquation;
            k.dom_lo = 0.0;
            k.dom_hi = p.L / p.b;
            k.label = "k";
            return {h, k};
        }
        case Family::Mutualism: {
            const auto& p = std::get<MutualismParams>(map.params);
            NullclineCurve h;
            h.eval = [p](double x) { return (p.A - p.a + p.B * x) / p.b; };
            h.annihilates = Annihilates::XEquation;
            h.dom_lo = 0.0;
            h.dom_hi = map.domain.xmax;
            h.label = "h";
            NullclineCurve k;
            k.eval = [p](double x) { return (p.c - p.C + p.d * x) / p.D; };
            k.annihilates = Annihilates::YEquation;
            k.dom_lo = 0.0;
            k.dom_hi = map.domain.xmax;
            k.label = "k";
            return {h, k};
        }
        case Family::PredPrey: {
            const auto& p = std::get<PredPreyParams>(map.params);
            NullclineCurve h;  // prey nullcline, a line over X
            h.eval = [p](double x) { return p.r / p.alpha * (1.0 - x / p.K); };
            h.annihilates = Annihilates::XEquation;
            h.dom_lo = 0.0;
            h.dom_hi = p.K;
            h.label = "h";
            NullclineCurve k;  // predator nullcline, the vertical line X = d/gamma
            k.orientation = Orientation::ExplicitInY;
            k.eval = [p](double) { return p.d / p.gamma; };
            k.annihilates = Annihilates::YEquation;
            k.dom_lo = 0.0;
            k.dom_hi = map.domain.ymax;
            k.label = "k";
            return {h, k};
        }
        case Family::Generic:
            throw UnsupportedFamily(
                "generic maps have no analytic nullclines; trace F-X and G-Y");
    }
    return {};
}

bool competition_degenerate(const CompetitionParams& p) {
    const double c12 = p.r1 / p.alpha1 - p.K2;
    const double c21 = p.r2 / p.alpha2 - p.K1;
    const double s1 = std::max(p.r1 / p.alpha1, p.K2);
    const double s2 = std::max(p.r2 / p.alpha2, p.K1);
    return std::abs(c12) < 1e-12 * s1 && std::abs(c21) < 1e-12 * s2;
}

namespace {

EquilibriumKind classify_location(const Point& p, double tol) {
    const bool x0 = std::abs(p.x) <= tol;
    const bool y0 = std::abs(p.y) <= tol;
    if (x0 && y0) return EquilibriumKind::Origin;
    if (y0) return EquilibriumKind::BoundaryX;
    if (x0) return EquilibriumKind::BoundaryY;
    return EquilibriumKind::Interior;
}

void add_unique(std::vector<Equilibrium>& eqs, const Point& p, double tol) {
    for (const auto& e : eqs) {
        if (dist_inf(e.p, p) < tol) return;
    }
    eqs.push_back({p, classify_location(p, tol)});
}

// Polishes a candidate fixed point; returns nullopt if Newton fails to land
// within `residual_tol`.
std::optional<Point> polish_fixed_point(const PlanarMap& map, const Point& seed,
                                        std::vector<std::string>& diagnostics) {
    PlanarField f = [&map](const Point& q) {
        const Point s = step(map, q);
        return std::array<double, 2>{s.x - q.x, s.y - q.y};
    };
    std::function<Mat2(const Point&)> jac;
    if (map.analytic_jacobian) {
        jac = [&map](const Point& q) {
            Mat2 J = map.analytic_jacobian(q.x, q.y);
            J.a -= 1.0;
            J.d -= 1.0;
            return J;
        };
    }
    const NewtonResult r = newton2(f, jac, seed);
    if (!r.converged || r.residual > 1e-10) {
        diagnostics.push_back("newton divergence from seed (" +
                              format_double(seed.x) + ", " +
                              format_double(seed.y) + ")");
        return std::nullopt;
    }
    return r.root;
}

// Segment/segment intersection points of two polylines; used to seed Newton
// for generic maps.
void polyline_intersections(const Polyline& A, const Polyline& B,
                            std::vector<Point>& out) {
    for (std::size_t i = 1; i < A.pts.size(); ++i) {
        const Point a0 = A.pts[i - 1], a1 = A.pts[i];
        for (std::size_t j = 1; j < B.pts.size(); ++j) {
            const Point b0 = B.pts[j - 1], b1 = B.pts[j];
            const double rx = a1.x - a0.x, ry = a1.y - a0.y;
            const double sx = b1.x - b0.x, sy = b1.y - b0.y;
            const double den = rx * sy - ry * sx;
            if (den == 0.0) continue;
            const double qx = b0.x - a0.x, qy = b0.y - a0.y;
            const double t = (qx * sy - qy * sx) / den;
            const double u = (qx * ry - qy * rx) / den;
            if (t < 0 || t > 1 || u < 0 || u > 1) continue;
            out.push_back({a0.x + t * rx, a0.y + t * ry});
        }
    }
}

EquilibriumSet equilibria_generic(const PlanarMap& map) {
    EquilibriumSet es;
    TraceConfig cfg;
    cfg.bbox = map.domain;
    cfg.grid_nx = cfg.grid_ny = 256;
    const auto xnull = trace_zero_set(
        [&map](double x, double y) { return map.F(x, y) - x; }, cfg);
    const auto ynull = trace_zero_set(
        [&map](double x, double y) { return map.G(x, y) - y; }, cfg);

    std::vector<Point> seeds;
    for (const auto& a : xnull.curves) {
        for (const auto& b : ynull.curves) polyline_intersections(a, b, seeds);
    }
    const double tol = 1e-8 * std::max(1.0, map.domain.diagonal());
    for (const Point& s : seeds) {
        if (auto r = polish_fixed_point(map, s, es.diagnostics)) {
            add_unique(es.isolated, *r, tol);
        }
    }
    return es;
}

}  // namespace

EquilibriumSet equilibria(const PlanarMap& map) {
    EquilibriumSet es;
    std::vector<Point> candidates;

    switch (map.family) {
        case Family::Competition: {
            const auto& p = std::get<CompetitionParams>(map.params);
            es.isolated.push_back({{0.0, 0.0}, EquilibriumKind::Origin});
            es.isolated.push_back({{p.K1, 0.0}, EquilibriumKind::BoundaryX});
            es.isolated.push_back({{0.0, p.K2}, EquilibriumKind::BoundaryY});
            if (competition_degenerate(p)) {
                auto [h, k] = competition_nullclines(p);
                es.continuum = SegmentDesc{{0.0, h.eval(0.0)}, {p.K1, 0.0}, "h"};
                return es;
            }
            const double c12 = p.r1 / p.alpha1 - p.K2;
            const double c21 = p.r2 / p.alpha2 - p.K1;
            if (c12 * c21 > 0.0) {
                const double den = p.alpha1 * p.alpha2 * p.K1 * p.K2 - p.r1 * p.r2;
                const Point estar{
                    p.r2 * p.K1 * (p.alpha1 * p.K2 - p.r1) / den,
                    p.r1 * p.K2 * (p.alpha2 * p.K1 - p.r2) / den};
                es.isolated.push_back({estar, EquilibriumKind::Interior});
            }
            return es;
        }
        case Family::Ricker: {
            const auto& p = std::get<RickerParams>(map.params);
            candidates = {{0.0, 0.0}, {p.K, 0.0}, {0.0, p.L}};
            if (std::abs(1.0 - p.a * p.b) > 1e-14) {
                const double xs = (p.K - p.a * p.L) / (1.0 - p.a * p.b);
                const double ys = p.L - p.b * xs;
                if (xs > 0 && ys > 0) candidates.push_back({xs, ys});
            }
            break;
        }
        case Family::Mutualism: {
            const auto& p = std::get<MutualismParams>(map.params);
            candidates = {{0.0, 0.0}};
            if (p.a > p.A) candidates.push_back({(p.a - p.A) / p.B, 0.0});
            if (p.c > p.C) candidates.push_back({0.0, (p.c - p.C) / p.D});
            // intersection of the lines Y=(A-a+BX)/b and Y=(c-C+dX)/D
            const double den = p.B * p.D - p.b * p.d;
            if (std::abs(den) > 1e-14) {
                const double xs = (p.b * (p.c - p.C) - p.D * (p.A - p.a)) / den;
                const double ys = (p.A - p.a + p.B * xs) / p.b;
                if (xs > 0 && ys > 0) candidates.push_back({xs, ys});
            }
            break;
        }
        case Family::PredPrey: {
            const auto& p = std::get<PredPreyParams>(map.params);
            candidates = {{0.0, 0.0}, {p.K, 0.0}};
            const double xs = p.d / p.gamma;
            const double ys = p.r / p.alpha * (1.0 - xs / p.K);
            if (ys > 0) candidates.push_back({xs, ys});
            break;
        }
        case Family::Generic:
            return equilibria_generic(map);
    }

    const double tol = 1e-9;
    for (const Point& c : candidates) {
        // exact axis candidates stay exact; polish interior ones
        const Point s = step(map, c);
        if (dist_inf(s, c) < 1e-12) {
            add_unique(es.isolated, c, tol);
        } else if (auto r = polish_fixed_point(map, c, es.diagnostics)) {
            add_unique(es.isolated, *r, tol);
        }
    }
    return es;
}

DirectionSigns direction_signs(const PlanarMap& map, const Point& p,
                               double band) {
    const Point q = step(map, p);
    return {sign_of(q.x - p.x, band), sign_of(q.y - p.y, band)};
}

}  // namespace augmap
