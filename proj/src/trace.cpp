#include "augmap/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace augmap {

double Polyline::length() const {
    double s = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) s += dist2(pts[i - 1], pts[i]);
    return s;
}

SaddleResolution resolve_saddle(double center_value, double tie_tol) {
    if (std::abs(center_value) < tie_tol) return SaddleResolution::Subdivide;
    return center_value > 0.0 ? SaddleResolution::ConnectAroundPositiveCenter
                              : SaddleResolution::ConnectAroundNegativeCenter;
}

namespace {

// Merges nearly coincident segment endpoints into shared node ids so chains
// can be assembled by exact adjacency. eps is far below a cell size and far
// above the bisection width, so distinct crossings never collide.
class PointMerger {
  public:
    explicit PointMerger(double eps) : eps_(eps) {}

    int intern(const Point& p) {
        const std::int64_t qx = std::llround(p.x / eps_);
        const std::int64_t qy = std::llround(p.y / eps_);
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = buckets_.find(key(qx + dx, qy + dy));
                if (it == buckets_.end()) continue;
                for (int id : it->second) {
                    if (std::abs(nodes_[id].x - p.x) <= eps_ &&
                        std::abs(nodes_[id].y - p.y) <= eps_) {
                        return id;
                    }
                }
            }
        }
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(p);
        buckets_[key(qx, qy)].push_back(id);
        return id;
    }

    const std::vector<Point>& nodes() const { return nodes_; }

  private:
    static std::uint64_t key(std::int64_t qx, std::int64_t qy) {
        return static_cast<std::uint64_t>(qx) * 0x9e3779b97f4a7c15ULL ^
               static_cast<std::uint64_t>(qy);
    }

    double eps_;
    std::vector<Point> nodes_;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

struct Tracer {
    const std::function<double(double, double)>& f;
    const TraceConfig& cfg;
    PointMerger merger;
    std::vector<std::pair<int, int>> segments;
    long masked = 0;
    double width_target;

    Tracer(const std::function<double(double, double)>& fn, const TraceConfig& c)
        : f(fn), cfg(c),
          merger(std::max(c.refine_tol,
                          1e-13 * std::max(1.0, c.bbox.diagonal()))) {
        const double ulp = 8 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::max(std::abs(c.bbox.xmax),
                                                  std::abs(c.bbox.ymax)));
        // bisect well past refine_tol so vertex residuals stay small even for
        // steep fields
        width_target = std::max(ulp, c.refine_tol * 1e-4);
    }

    // 1D bisection along a horizontal (axis=0) or vertical (axis=1) edge
    Point edge_crossing(double t0, double t1, double f0, double f1,
                        double fixed, int axis) {
        auto eval = [&](double t) {
            return axis == 0 ? f(t, fixed) : f(fixed, t);
        };
        if (f0 == 0.0) return axis == 0 ? Point{t0, fixed} : Point{fixed, t0};
        if (f1 == 0.0) return axis == 0 ? Point{t1, fixed} : Point{fixed, t1};
        double lo = t0, hi = t1, flo = f0;
        while (hi - lo > width_target) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double fm = eval(mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        const double t = 0.5 * (lo + hi);
        return axis == 0 ? Point{t, fixed} : Point{fixed, t};
    }

    void emit(const Point& a, const Point& b) {
        const int ia = merger.intern(a);
        const int ib = merger.intern(b);
        if (ia != ib) segments.emplace_back(ia, ib);
    }

    // Corner order: v00 (x0,y0), v10 (x1,y0), v11 (x1,y1), v01 (x0,y1).
    // Returns false when a non-finite sample forced the cell to be masked.
    bool cell(double x0, double x1, double y0, double y1, double v00,
              double v10, double v11, double v01, int depth) {
        if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v11) ||
            !std::isfinite(v01)) {
            return false;
        }
        const int c = (v00 >= 0 ? 1 : 0) | (v10 >= 0 ? 2 : 0) |
                      (v11 >= 0 ? 4 : 0) | (v01 >= 0 ? 8 : 0);
        if (c == 0 || c == 15) return true;

        auto B = [&] { return edge_crossing(x0, x1, v00, v10, y0, 0); };
        auto T = [&] { return edge_crossing(x0, x1, v01, v11, y1, 0); };
        auto L = [&] { return edge_crossing(y0, y1, v00, v01, x0, 1); };
        auto R = [&] { return edge_crossing(y0, y1, v10, v11, x1, 1); };

        switch (c) {
            case 1: case 14: emit(L(), B()); return true;
            case 2: case 13: emit(B(), R()); return true;
            case 4: case 11: emit(R(), T()); return true;
            case 8: case 7:  emit(T(), L()); return true;
            case 3: case 12: emit(L(), R()); return true;
            case 6: case 9:  emit(B(), T()); return true;
            case 5: case 10: break;  // ambiguous, handled below
        }

        const double xm = 0.5 * (x0 + x1);
        const double ym = 0.5 * (y0 + y1);
        const double vc = f(xm, ym);
        if (!std::isfinite(vc)) return false;

        const SaddleResolution r =
            depth > 0 ? (vc >= 0 ? SaddleResolution::ConnectAroundPositiveCenter
                                 : SaddleResolution::ConnectAroundNegativeCenter)
                      : resolve_saddle(vc, cfg.refine_tol);

        if (r == SaddleResolution::Subdivide) {
            const double fb = f(xm, y0), fr = f(x1, ym);
            const double ft = f(xm, y1), fl = f(x0, ym);
            if (!std::isfinite(fb) || !std::isfinite(fr) || !std::isfinite(ft) ||
                !std::isfinite(fl)) {
                return false;
            }
            bool ok = true;
            ok &= cell(x0, xm, y0, ym, v00, fb, vc, fl, depth + 1);
            ok &= cell(xm, x1, y0, ym, fb, v10, fr, vc, depth + 1);
            ok &= cell(xm, x1, ym, y1, vc, fr, v11, ft, depth + 1);
            ok &= cell(x0, xm, ym, y1, fl, vc, ft, v01, depth + 1);
            return ok;
        }

        const bool center_pos = (r == SaddleResolution::ConnectAroundPositiveCenter);
        if (c == 5) {
            // v00, v11 positive
            if (center_pos) {
                emit(B(), R());
                emit(T(), L());
            } else {
                emit(L(), B());
                emit(R(), T());
            }
        } else {  // c == 10: v10, v01 positive
            if (center_pos) {
                emit(L(), B());
                emit(R(), T());
            } else {
                emit(B(), R());
                emit(T(), L());
            }
        }
        return true;
    }
};

}  // namespace

TraceResult trace_zero_set(const std::function<double(double, double)>& f,
                           const TraceConfig& cfg) {
    if (cfg.grid_nx < 16 || cfg.grid_ny < 16) {
        throw std::invalid_argument("trace grid must be at least 16x16");
    }
    if (!(cfg.bbox.width() > 0.0) || !(cfg.bbox.height() > 0.0)) {
        throw std::invalid_argument("trace bbox must have positive area");
    }

    const int nx = cfg.grid_nx, ny = cfg.grid_ny;
    const double dx = cfg.bbox.width() / nx;
    const double dy = cfg.bbox.height() / ny;

    std::vector<double> vals(static_cast<std::size_t>(nx + 1) * (ny + 1));
    std::vector<double> xs(nx + 1), ys(ny + 1);
    for (int i = 0; i <= nx; ++i) xs[i] = cfg.bbox.xmin + i * dx;
    for (int j = 0; j <= ny; ++j) ys[j] = cfg.bbox.ymin + j * dy;
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            vals[static_cast<std::size_t>(j) * (nx + 1) + i] = f(xs[i], ys[j]);
        }
    }
    auto v = [&](int i, int j) {
        return vals[static_cast<std::size_t>(j) * (nx + 1) + i];
    };

    Tracer tracer(f, cfg);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (!tracer.cell(xs[i], xs[i + 1], ys[j], ys[j + 1], v(i, j),
                             v(i + 1, j), v(i + 1, j + 1), v(i, j + 1), 0)) {
                ++tracer.masked;
            }
        }
    }

    // chain assembly: walk from every degree!=2 node, then collect loops
    const auto& nodes = tracer.merger.nodes();
    const int n_nodes = static_cast<int>(nodes.size());
    std::vector<std::vector<int>> incident(n_nodes);  // segment ids
    for (int s = 0; s < static_cast<int>(tracer.segments.size()); ++s) {
        incident[tracer.segments[s].first].push_back(s);
        incident[tracer.segments[s].second].push_back(s);
    }

    std::vector<bool> used(tracer.segments.size(), false);
    TraceResult res;
    res.masked_cells = tracer.masked;

    auto walk = [&](int start_node, int seg) {
        Polyline line;
        line.pts.push_back(nodes[start_node]);
        int node = start_node;
        int s = seg;
        while (true) {
            used[s] = true;
            const auto& [u, w] = tracer.segments[s];
            node = (u == node) ? w : u;
            line.pts.push_back(nodes[node]);
            if (incident[node].size() != 2) break;
            const int s0 = incident[node][0];
            const int nxt = (s0 == s) ? incident[node][1] : s0;
            if (used[nxt]) break;
            s = nxt;
        }
        if (node == start_node && line.pts.size() > 3) line.closed = true;
        return line;
    };

    for (int n = 0; n < n_nodes; ++n) {
        if (incident[n].size() == 2) continue;
        for (int s : incident[n]) {
            if (!used[s]) res.curves.push_back(walk(n, s));
        }
    }
    for (int n = 0; n < n_nodes; ++n) {
        for (int s : incident[n]) {
            if (!used[s]) res.curves.push_back(walk(n, s));
        }
    }
    return res;
}

}  // namespace augmap
