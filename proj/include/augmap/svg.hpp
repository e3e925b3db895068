#pragma once

#include <string>
#include <vector>

#include "augmap/config.hpp"
#include "augmap/report.hpp"

namespace augmap {

struct OrbitSpec {
    Point start;
    long steps = 10;
};

/// Renders the augmented phase portrait as a standalone SVG document.
/// Conventions: curves of the X-equation in black, of the Y-equation in
/// gray; nullclines dashed, root-curves solid; '+'/'-' operator signs per
/// region in matching colors; direction arrows on a coarse sub-grid;
/// equilibria as labeled dots; optional orbits with a star on the start.
/// Same config and seed produce byte-identical output.
std::string render_portrait(const Config& cfg,
                            const std::vector<OrbitSpec>& orbits = {});

}  // namespace augmap
