#pragma once

#include <cmath>

namespace augmap {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline bool is_finite(const Point& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

inline double dist_inf(const Point& a, const Point& b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

inline double dist2(const Point& a, const Point& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// Axis-aligned rectangle, used for trace windows and sampling boxes.
struct Box {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 1.0;
    double ymax = 1.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diagonal() const { return std::hypot(width(), height()); }
    bool contains(const Point& p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
};

// Euclidean distance from p to the segment [a, b].
double dist_to_segment(const Point& p, const Point& a, const Point& b);

}  // namespace augmap
