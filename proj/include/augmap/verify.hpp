#pragma once

#include <json.hpp>

#include "augmap/config.hpp"

namespace augmap {

struct VerifyOutcome {
    nlohmann::ordered_json report;
    std::string summary;   // one human-readable line per check
    int exit_code = 0;     // 0: all checks passed, 1: at least one failed
};

/// Runs the model-appropriate verification suite:
///   competition - sign tables per region, zeros of the operators along the
///                 nullclines vs the equilibria, sampled global outcome,
///                 box-region transition exclusion, degenerate-line demo;
///   ricker      - jump scans, invariance verdicts, oscillation-risk pairs,
///                 optional convergence run;
///   mutualism   - root-curve component counts, optional convergence run;
///   predprey    - prey-only convergence or period-2/3 exclusion search;
///   generic     - traced nullclines and equilibria summary.
VerifyOutcome run_verify(const Config& cfg);

}  // namespace augmap
