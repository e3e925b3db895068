#include "augmap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace augmap {

double dist_to_segment(const Point& p, const Point& a, const Point& b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double len2 = vx * vx + vy * vy;
    if (len2 == 0.0) return dist2(p, a);
    double t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist2(p, Point{a.x + t * vx, a.y + t * vy});
}

double Mat2::norm_inf() const {
    return std::max(std::abs(a) + std::abs(b), std::abs(c) + std::abs(d));
}

Eig2 eig2(const Mat2& m) {
    const double tr = m.trace();
    const double det = m.det();
    // (a-d)^2 + 4bc equals tr^2 - 4det but avoids cancellation when the
    // diagonal entries are close.
    const double disc = (m.a - m.d) * (m.a - m.d) + 4.0 * m.b * m.c;

    std::complex<double> l1, l2;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        // sign-aware root to avoid subtracting nearly equal quantities
        const double q = 0.5 * (tr + std::copysign(s, tr));
        if (q != 0.0) {
            l1 = q;
            l2 = det / q;
        } else {
            l1 = 0.5 * (tr + s);
            l2 = 0.5 * (tr - s);
        }
    } else {
        const double im = 0.5 * std::sqrt(-disc);
        l1 = {0.5 * tr, im};
        l2 = {0.5 * tr, -im};
    }

    auto before = [](const std::complex<double>& u, const std::complex<double>& v) {
        const double au = std::abs(u), av = std::abs(v);
        if (au != av) return au > av;
        if (u.real() != v.real()) return u.real() > v.real();
        return u.imag() > v.imag();
    };
    if (!before(l1, l2)) std::swap(l1, l2);
    return {l1, l2};
}

std::optional<Point> solve2x2(const Mat2& m, const Point& rhs) {
    const double det = m.det();
    const double scale = m.norm_inf();
    if (std::abs(det) <= 1e-12 * std::max(scale * scale, 1e-300)) return std::nullopt;
    return Point{(rhs.x * m.d - rhs.y * m.b) / det,
                 (rhs.y * m.a - rhs.x * m.c) / det};
}

namespace {

Mat2 fd_jacobian(const PlanarField& f, const Point& p) {
    const double scale = std::max(1.0, std::max(std::abs(p.x), std::abs(p.y)));
    const double h = 1e-7 * scale;
    const auto fxp = f({p.x + h, p.y});
    const auto fxm = f({p.x - h, p.y});
    const auto fyp = f({p.x, p.y + h});
    const auto fym = f({p.x, p.y - h});
    return Mat2{(fxp[0] - fxm[0]) / (2 * h), (fyp[0] - fym[0]) / (2 * h),
                (fxp[1] - fxm[1]) / (2 * h), (fyp[1] - fym[1]) / (2 * h)};
}

}  // namespace

NewtonResult newton2(const PlanarField& f,
                     const std::function<Mat2(const Point&)>& jac,
                     Point seed, const NewtonOptions& opts) {
    NewtonResult res;
    Point p = seed;
    const double seed_scale =
        std::max(1.0, std::max(std::abs(seed.x), std::abs(seed.y)));
    const double stray = opts.box_factor * seed_scale;

    for (int it = 0; it < opts.max_iter; ++it) {
        res.iterations = it;
        const auto fv = f(p);
        res.residual = std::max(std::abs(fv[0]), std::abs(fv[1]));
        if (!std::isfinite(res.residual)) return res;
        if (res.residual < opts.tol) {
            res.root = p;
            res.converged = true;
            return res;
        }

        const Mat2 J = jac ? jac(p) : fd_jacobian(f, p);
        Point delta;
        if (auto sol = solve2x2(J, Point{fv[0], fv[1]})) {
            delta = *sol;
        } else {
            // near-singular Jacobian: take a short residual-scaled step
            res.singular_encountered = true;
            const double s = 1.0 / (J.norm_inf() + 1.0);
            delta = {fv[0] * s, fv[1] * s};
        }
        p = {p.x - delta.x, p.y - delta.y};
        if (!is_finite(p) ||
            std::abs(p.x - seed.x) > stray || std::abs(p.y - seed.y) > stray) {
            return res;  // divergence
        }
        if (std::max(std::abs(delta.x), std::abs(delta.y)) < opts.tol) {
            const auto fr = f(p);
            res.residual = std::max(std::abs(fr[0]), std::abs(fr[1]));
            res.root = p;
            res.converged = std::isfinite(res.residual) && res.residual < opts.tol;
            return res;
        }
    }
    return res;
}

BisectResult bisect(const std::function<double(double)>& g, double lo,
                    double hi, double tol) {
    double flo = g(lo), fhi = g(hi);
    if (flo == 0.0) return {lo, BisectStatus::Converged};
    if (fhi == 0.0) return {hi, BisectStatus::Converged};
    if ((flo > 0) == (fhi > 0)) return {0.0, BisectStatus::NoSignChange};

    const double ulp_floor =
        4 * std::numeric_limits<double>::epsilon() *
        std::max({std::abs(lo), std::abs(hi), 1.0});
    const double width_tol = std::max(tol, ulp_floor);

    while (hi - lo > width_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = g(mid);
        if (fm == 0.0) return {mid, BisectStatus::Converged};
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), BisectStatus::Converged};
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

Point R2Sequence::next() {
    // inverse powers of the plastic constant (real root of x^3 = x + 1)
    constexpr double g1 = 0.7548776662466927;   // 1/rho
    constexpr double g2 = 0.5698402909980532;   // 1/rho^2
    ++n_;
    const double n = static_cast<double>(n_);
    double u = std::fmod(0.5 + n * g1, 1.0);
    double v = std::fmod(0.5 + n * g2, 1.0);
    return {u, v};
}

Point R2Sequence::next_in(const Box& b) {
    const Point u = next();
    return {b.xmin + u.x * b.width(), b.ymin + u.y * b.height()};
}

}  // namespace augmap
