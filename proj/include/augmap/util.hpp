#pragma once

#include <charconv>
#include <string>
#include <vector>

#include "augmap/core.hpp"

namespace augmap {

/// Shortest round-trip decimal representation of a double (what to_chars
/// produces). Used everywhere bytes must be reproducible: CSV, SVG.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// CSV orbit dump: header t,x,y then one row per iterate, round-trip exact.
inline std::string orbit_csv(const std::vector<Point>& points) {
    std::string out = "t,x,y\n";
    for (std::size_t t = 0; t < points.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += format_double(points[t].x);
        out += ',';
        out += format_double(points[t].y);
        out += '\n';
    }
    return out;
}

}  // namespace augmap
