#include "augmap/next_iterate.hpp"

#include <algorithm>
#include <cmath>

namespace augmap {

double NextIterateOperator::operator()(const Point& p) const {
    const Point q = step(map, p);
    if (nullcline.orientation == Orientation::ExplicitInX) {
        return q.y - nullcline.eval(q.x);
    }
    return q.x - nullcline.eval(q.y);
}

NextIterateOperator next_iterate_operator(const PlanarMap& map,
                                          const NullclineCurve& nc) {
    return NextIterateOperator{map, nc};
}

const char* to_string(BranchId id) {
    switch (id) {
        case BranchId::rh1: return "rh1";
        case BranchId::rh2: return "rh2";
        case BranchId::Rh1: return "Rh1";
        case BranchId::Rh2: return "Rh2";
        case BranchId::rk1: return "rk1";
        case BranchId::rk2: return "rk2";
        case BranchId::Rk1: return "Rk1";
        case BranchId::Rk2: return "Rk2";
    }
    return "?";
}

QuadraticRootCoeffs competition_quadratics(const CompetitionParams& p) {
    const double r1 = p.r1, r2 = p.r2, K1 = p.K1, K2 = p.K2;
    const double a1 = p.alpha1, a2 = p.alpha2;

    QuadraticRootCoeffs q;
    q.a0 = [=](double X) { return -r1 * K2 * (K1 - X) * (1 + a2 * X); };
    q.a1 = [=](double X) {
        return -r1 * r2 * (K1 - X) -
               a1 * K2 * (-r1 * (1 + r2) * X + K1 * (-1 + r1 - r2 + a2 * r1 * X));
    };
    q.a2 = a1 * K1 * (a1 * K2 * (1 + r2) - r1 * r2);

    q.A0 = [=](double Y) {
        return K1 * (1 + a1 * Y) * (-r1 * r2 * Y + K2 * (-r1 + a1 * (1 + r2) * Y));
    };
    q.A1 = [=](double Y) {
        return r1 * (r2 * Y + K2 * (1 + a1 * (1 + r2) * Y - a2 * (K1 + a1 * K1 * Y)));
    };
    q.A2 = a2 * K2 * r1;

    q.b0 = [=](double X) {
        return K2 * K2 * (1 + a2 * X) *
               (K1 * (a2 * (1 + r1) * X - r2) - r1 * r2 * X);
    };
    q.b1 = [=](double X) {
        return K2 * r2 * (r1 * X + K1 * (1 + a2 * (1 + r1) * X - a1 * (K2 + a2 * K2 * X)));
    };
    q.b2 = a1 * r2 * K1 * K2;

    q.B0 = [=](double Y) { return -K1 * K2 * r2 * (K2 - Y) * (1 + a1 * Y); };
    q.B1 = [=](double Y) {
        return K2 * (r1 * r2 * (Y - K2) +
                     a2 * K1 * ((1 + r1) * r2 * Y + K2 * (1 + r1 - r2 * (1 + a1 * Y))));
    };
    q.B2 = a2 * K2 * K2 * (a2 * K1 * (1 + r1) - r1 * r2);
    return q;
}

double numerator_h(const QuadraticRootCoeffs& q, double X, double Y) {
    return q.a0(X) + q.a1(X) * Y + q.a2 * Y * Y;
}

double numerator_h_xform(const QuadraticRootCoeffs& q, double X, double Y) {
    return q.A0(Y) + q.A1(Y) * X + q.A2 * X * X;
}

double numerator_k(const QuadraticRootCoeffs& q, double X, double Y) {
    return q.b0(X) + q.b1(X) * Y + q.b2 * Y * Y;
}

double numerator_k_xform(const QuadraticRootCoeffs& q, double X, double Y) {
    return q.B0(Y) + q.B1(Y) * X + q.B2 * X * X;
}

namespace {

double shared_denominator(const CompetitionParams& p, double X, double Y) {
    return (p.K1 + p.r1 * X + p.alpha1 * p.K1 * Y) *
           (p.K2 + p.alpha2 * p.K2 * X + p.r2 * Y);
}

}  // namespace

double quotient_Lh(const CompetitionParams& p, double X, double Y) {
    const QuadraticRootCoeffs q = competition_quadratics(p);
    return numerator_h(q, X, Y) / (p.alpha1 * shared_denominator(p, X, Y));
}

double quotient_Lk(const CompetitionParams& p, double X, double Y) {
    const QuadraticRootCoeffs q = competition_quadratics(p);
    return numerator_k(q, X, Y) / (p.r2 * shared_denominator(p, X, Y));
}

namespace {

// Quadratic branch value c0 + c1 t + c2 t^2 = 0 solved for t, upper (+) or
// lower (-) branch. Discriminant values in (-1e-12, 0) are clipped to zero so
// rounding cannot open spurious gaps at tangencies. When c2 == 0 the branch
// degenerates to the linear root -c0/c1.
BranchValue quadratic_branch(double c0, double c1, double c2, bool upper) {
    if (c2 == 0.0) {
        if (c1 == 0.0) return {};
        return {-c0 / c1, true};
    }
    double disc = c1 * c1 - 4.0 * c0 * c2;
    if (disc < 0.0) {
        if (disc > -1e-12) disc = 0.0;  // tangency
        else return {};
    }
    const double s = std::sqrt(disc);
    return {(-c1 + (upper ? s : -s)) / (2.0 * c2), true};
}

}  // namespace

std::vector<RootCurveBranch> closed_form_root_curves(const CompetitionParams& p,
                                                     const Box& window) {
    const QuadraticRootCoeffs q = competition_quadratics(p);
    std::vector<RootCurveBranch> branches;

    auto add = [&](BranchId id, Orientation orient, const std::string& label,
                   std::function<BranchValue(double)> eval) {
        RootCurveBranch b;
        b.id = id;
        b.orientation = orient;
        b.nullcline_label = label;
        b.eval = std::move(eval);
        // flag branches that never produce a point inside the window
        const bool in_x = (orient == Orientation::ExplicitInX);
        const double lo = in_x ? window.xmin : window.ymin;
        const double hi = in_x ? window.xmax : window.ymax;
        const double vlo = in_x ? window.ymin : window.xmin;
        const double vhi = in_x ? window.ymax : window.xmax;
        const int n = 512;
        for (int i = 0; i <= n && !b.in_window; ++i) {
            const double t = lo + (hi - lo) * i / n;
            const BranchValue v = b.eval(t);
            if (v.ok && v.value >= vlo && v.value <= vhi) b.in_window = true;
        }
        branches.push_back(std::move(b));
    };

    add(BranchId::rh1, Orientation::ExplicitInX, "h", [q](double X) {
        return quadratic_branch(q.a0(X), q.a1(X), q.a2, true);
    });
    add(BranchId::rh2, Orientation::ExplicitInX, "h", [q](double X) {
        return quadratic_branch(q.a0(X), q.a1(X), q.a2, false);
    });
    add(BranchId::Rh1, Orientation::ExplicitInY, "h", [q](double Y) {
        return quadratic_branch(q.A0(Y), q.A1(Y), q.A2, true);
    });
    add(BranchId::Rh2, Orientation::ExplicitInY, "h", [q](double Y) {
        return quadratic_branch(q.A0(Y), q.A1(Y), q.A2, false);
    });
    add(BranchId::rk1, Orientation::ExplicitInX, "k", [q](double X) {
        return quadratic_branch(q.b0(X), q.b1(X), q.b2, true);
    });
    add(BranchId::rk2, Orientation::ExplicitInX, "k", [q](double X) {
        return quadratic_branch(q.b0(X), q.b1(X), q.b2, false);
    });
    add(BranchId::Rk1, Orientation::ExplicitInY, "k", [q](double Y) {
        return quadratic_branch(q.B0(Y), q.B1(Y), q.B2, true);
    });
    add(BranchId::Rk2, Orientation::ExplicitInY, "k", [q](double Y) {
        return quadratic_branch(q.B0(Y), q.B1(Y), q.B2, false);
    });
    return branches;
}

RootNullclineScan root_set_nullcline_intersections(const PlanarMap& /*map*/,
                                                   const NullclineCurve& nc,
                                                   const NextIterateOperator& op,
                                                   const Box& window,
                                                   double scan_step_rel) {
    RootNullclineScan out;
    const bool in_x = (nc.orientation == Orientation::ExplicitInX);
    const double lo = in_x ? std::max(nc.dom_lo, window.xmin)
                           : std::max(nc.dom_lo, window.ymin);
    const double hi = in_x ? std::min(nc.dom_hi, window.xmax)
                           : std::min(nc.dom_hi, window.ymax);
    if (!(hi > lo)) return out;

    auto point_at = [&](double t) {
        return in_x ? Point{t, nc.eval(t)} : Point{nc.eval(t), t};
    };
    auto g = [&](double t) { return op(point_at(t)); };

    const long n = std::max<long>(8, std::lround(1.0 / scan_step_rel));
    const double dt = (hi - lo) / static_cast<double>(n);
    const double zero_tol = 1e-9;

    std::vector<double> roots;
    long tiny = 0;
    double prev_t = lo, prev_g = g(lo);
    if (std::abs(prev_g) <= zero_tol) roots.push_back(lo);
    for (long i = 1; i <= n; ++i) {
        const double t = (i == n) ? hi : lo + i * dt;
        const double gt = g(t);
        if (std::abs(gt) <= zero_tol) {
            roots.push_back(t);
            ++tiny;
        } else if (std::abs(prev_g) > zero_tol && (gt > 0) != (prev_g > 0)) {
            const BisectResult b = bisect(g, prev_t, t, 1e-13 * std::max(1.0, hi));
            if (b.status == BisectStatus::Converged) roots.push_back(b.root);
        }
        prev_t = t;
        prev_g = gt;
    }

    if (tiny > n / 2) {
        out.identically_zero = true;
        return out;
    }

    std::sort(roots.begin(), roots.end());
    const double merge_tol = 2.0 * dt;
    for (double t : roots) {
        if (!out.zeros.empty()) {
            const double last = in_x ? out.zeros.back().x : out.zeros.back().y;
            if (t - last < merge_tol) continue;
        }
        out.zeros.push_back(point_at(t));
    }
    return out;
}

bool joint_root_preimage_check(const CompetitionParams& p, const Point& pt,
                               double tol) {
    const PlanarMap map = make_competition(p);
    auto [h, k] = competition_nullclines(p);
    const double lh = NextIterateOperator{map, h}(pt);
    const double lk = NextIterateOperator{map, k}(pt);
    return std::abs(lh) < tol && std::abs(lk) < tol;
}

}  // namespace augmap
