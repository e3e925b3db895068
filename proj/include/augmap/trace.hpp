#pragma once

#include <functional>
#include <vector>

#include "augmap/core.hpp"

namespace augmap {

struct TraceConfig {
    Box bbox;
    int grid_nx = 512;
    int grid_ny = 512;
    double refine_tol = 1e-10;  // bisection width along grid edges
};

struct Polyline {
    std::vector<Point> pts;
    bool closed = false;  // closed loops repeat the first point at the end

    double length() const;
};

struct TraceResult {
    std::vector<Polyline> curves;
    long masked_cells = 0;  // cells skipped because a sample was non-finite
};

/// Marching-squares contour of f at level zero over cfg.bbox. Edge crossings
/// are refined by bisection; segments are assembled into maximal chains and
/// closed loops are closed explicitly. Cells with non-finite samples are
/// masked and counted, never fatal.
TraceResult trace_zero_set(const std::function<double(double, double)>& f,
                           const TraceConfig& cfg);

enum class SaddleResolution {
    ConnectAroundPositiveCenter,  // center sample >= tie_tol
    ConnectAroundNegativeCenter,  // center sample <= -tie_tol
    Subdivide,                    // |center| < tie_tol: split the cell once
};

/// Pairing rule for the two ambiguous marching-squares cells (alternating
/// corner signs), decided by the sign of f at the cell center.
SaddleResolution resolve_saddle(double center_value, double tie_tol);

}  // namespace augmap
