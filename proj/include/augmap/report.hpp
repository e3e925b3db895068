#pragma once

#include <json.hpp>

#include "augmap/competition.hpp"
#include "augmap/config.hpp"

namespace augmap {

/// Everything the report, portrait and verifier share for one configured map.
struct Analysis {
    PlanarMap map;
    std::vector<NullclineCurve> nullclines;      // empty for generic maps
    std::vector<Polyline> traced_x_nullclines;   // generic: zero set of F - X
    std::vector<Polyline> traced_y_nullclines;   // generic: zero set of G - Y
    EquilibriumSet eqs;
    std::optional<Decomposition> full;       // cut by nullclines and root-curves
    std::optional<Decomposition> monotone;   // cut by nullclines only
    std::vector<InvarianceVerdict> verdicts; // one per monotone region
    std::vector<std::pair<int, int>> risk;
    std::optional<CasePrediction> prediction;  // competition only
};

Analysis analyze_map(const Config& cfg);

/// Full machine-readable report:
/// { model, params, equilibria[], case?, regions[], invariance[],
///   oscillation_risk[], convergence? }
nlohmann::ordered_json analyze(const Config& cfg);

}  // namespace augmap
