#include "augmap/models.hpp"

#include <cmath>
#include <stdexcept>

namespace augmap {

const char* to_string(Family f) {
    switch (f) {
        case Family::Competition: return "competition";
        case Family::Ricker: return "ricker";
        case Family::Mutualism: return "mutualism";
        case Family::PredPrey: return "predprey";
        case Family::Generic: return "generic";
    }
    return "?";
}

namespace {

void require_positive(std::initializer_list<std::pair<const char*, double>> vals) {
    for (const auto& [name, v] : vals) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string("parameter '") + name +
                                        "' must be strictly positive");
        }
    }
}

}  // namespace

PlanarMap make_competition(const CompetitionParams& p) {
    require_positive({{"r1", p.r1}, {"r2", p.r2}, {"K1", p.K1}, {"K2", p.K2},
                      {"alpha1", p.alpha1}, {"alpha2", p.alpha2}});
    PlanarMap m;
    m.family = Family::Competition;
    m.name = "competition";
    m.params = p;
    m.F = [p](double x, double y) {
        return (1.0 + p.r1) * x / (1.0 + p.r1 / p.K1 * x + p.alpha1 * y);
    };
    m.G = [p](double x, double y) {
        return (1.0 + p.r2) * y / (1.0 + p.r2 / p.K2 * y + p.alpha2 * x);
    };
    m.analytic_jacobian = [p](double x, double y) {
        const double d1 = 1.0 + p.r1 / p.K1 * x + p.alpha1 * y;
        const double d2 = 1.0 + p.r2 / p.K2 * y + p.alpha2 * x;
        return Mat2{(1.0 + p.r1) * (1.0 + p.alpha1 * y) / (d1 * d1),
                    -(1.0 + p.r1) * x * p.alpha1 / (d1 * d1),
                    -(1.0 + p.r2) * y * p.alpha2 / (d2 * d2),
                    (1.0 + p.r2) * (1.0 + p.alpha2 * x) / (d2 * d2)};
    };
    const double xmax = 1.2 * std::max(p.K1, p.r2 / p.alpha2);
    const double ymax = 1.2 * std::max(p.K2, p.r1 / p.alpha1);
    m.domain = Box{0.0, 0.0, xmax, ymax};
    return m;
}

PlanarMap make_ricker(const RickerParams& p) {
    require_positive({{"K", p.K}, {"L", p.L}, {"a", p.a}, {"b", p.b}});
    PlanarMap m;
    m.family = Family::Ricker;
    m.name = "ricker";
    m.params = p;
    m.F = [p](double x, double y) { return x * std::exp(p.K - x - p.a * y); };
    m.G = [p](double x, double y) { return y * std::exp(p.L - p.b * x - y); };
    m.analytic_jacobian = [p](double x, double y) {
        const double ef = std::exp(p.K - x - p.a * y);
        const double eg = std::exp(p.L - p.b * x - y);
        return Mat2{ef * (1.0 - x), -p.a * x * ef,
                    -p.b * y * eg, eg * (1.0 - y)};
    };
    const double ext = 1.5 * std::max(p.K, p.L / p.b);
    m.domain = Box{0.0, 0.0, ext, ext};
    return m;
}

PlanarMap make_mutualism(const MutualismParams& p) {
    require_positive({{"a", p.a}, {"b", p.b}, {"A", p.A}, {"B", p.B},
                      {"c", p.c}, {"d", p.d}, {"C", p.C}, {"D", p.D}});
    PlanarMap m;
    m.family = Family::Mutualism;
    m.name = "mutualism";
    m.params = p;
    m.F = [p](double x, double y) { return (p.a + p.b * y) * x / (p.A + p.B * x); };
    m.G = [p](double x, double y) { return (p.c + p.d * x) * y / (p.C + p.D * y); };
    m.analytic_jacobian = [p](double x, double y) {
        const double dx = p.A + p.B * x;
        const double dy = p.C + p.D * y;
        return Mat2{(p.a + p.b * y) * p.A / (dx * dx), p.b * x / dx,
                    p.d * y / dy, (p.c + p.d * x) * p.C / (dy * dy)};
    };
    m.domain = Box{0.0, 0.0, 6.0, 6.0};
    return m;
}

PlanarMap make_predprey(const PredPreyParams& p) {
    require_positive({{"r", p.r}, {"K", p.K}, {"alpha", p.alpha},
                      {"gamma", p.gamma}, {"d", p.d}});
    PlanarMap m;
    m.family = Family::PredPrey;
    m.name = "predprey";
    m.params = p;
    m.F = [p](double x, double y) {
        return (1.0 + p.r) * x / (1.0 + p.r / p.K * x + p.alpha * y);
    };
    m.G = [p](double x, double y) {
        return (1.0 + p.gamma * x) * y / (1.0 + p.d);
    };
    m.analytic_jacobian = [p](double x, double y) {
        const double dd = 1.0 + p.r / p.K * x + p.alpha * y;
        return Mat2{(1.0 + p.r) * (1.0 + p.alpha * y) / (dd * dd),
                    -(1.0 + p.r) * x * p.alpha / (dd * dd),
                    p.gamma * y / (1.0 + p.d),
                    (1.0 + p.gamma * x) / (1.0 + p.d)};
    };
    const double xmax = 1.5 * std::max(p.K, p.d / p.gamma);
    const double ymax = 1.5 * p.r / p.alpha;
    m.domain = Box{0.0, 0.0, xmax, ymax};
    return m;
}

PlanarMap make_generic(ScalarField F, ScalarField G, const Box& domain) {
    if (!F || !G) throw std::invalid_argument("generic map needs both fields");
    PlanarMap m;
    m.family = Family::Generic;
    m.name = "generic";
    m.F = std::move(F);
    m.G = std::move(G);
    m.domain = domain;
    return m;
}

Point step(const PlanarMap& map, const Point& p) {
    return {map.F(p.x, p.y), map.G(p.x, p.y)};
}

OrbitResult orbit(const PlanarMap& map, const Point& p0, std::size_t n) {
    OrbitResult res;
    res.points.reserve(n + 1);
    res.points.push_back(p0);
    for (std::size_t t = 0; t < n; ++t) {
        const Point q = step(map, res.points.back());
        if (!is_finite(q)) {
            res.nonfinite_index = res.points.size();
            break;
        }
        res.points.push_back(q);
    }
    return res;
}

Mat2 jacobian_at(const PlanarMap& map, const Point& p) {
    if (map.analytic_jacobian) return map.analytic_jacobian(p.x, p.y);
    const double h = 1e-7 * std::max(1.0, std::hypot(p.x, p.y));
    return Mat2{(map.F(p.x + h, p.y) - map.F(p.x - h, p.y)) / (2 * h),
                (map.F(p.x, p.y + h) - map.F(p.x, p.y - h)) / (2 * h),
                (map.G(p.x + h, p.y) - map.G(p.x - h, p.y)) / (2 * h),
                (map.G(p.x, p.y + h) - map.G(p.x, p.y - h)) / (2 * h)};
}

}  // namespace augmap
