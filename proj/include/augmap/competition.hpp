#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "augmap/regions.hpp"

namespace augmap {

struct EfficiencyPair {
    double c12 = 0.0;  // r1/alpha1 - K2
    double c21 = 0.0;  // r2/alpha2 - K1
};

EfficiencyPair efficiencies(const CompetitionParams& p);

enum class CompetitionCase {
    DegenerateLine,  // both efficiencies zero: a whole segment of equilibria
    ExclusionYWins,  // c12 < 0 < c21
    ExclusionXWins,  // c21 < 0 < c12
    Bistable,        // both negative
    Coexistence,     // both positive
};

const char* to_string(CompetitionCase c);

struct AttractorDesc {
    std::string label;  // "E0", "E1", "E2", "E*", "E*_X"
    bool is_segment = false;
    Point point{};
    Point seg_a{}, seg_b{};  // for the equilibrium segment

    double distance(const Point& p) const;
};

struct CasePrediction {
    CompetitionCase cse = CompetitionCase::Coexistence;
    std::vector<AttractorDesc> attractors;  // predicted limit sets
    std::vector<AttractorDesc> unstable;
};

/// Predicted global outcome; a pure function of the efficiency signs.
CasePrediction classify(const CompetitionParams& p);

struct SignLemmaViolation {
    Point p;
    std::string region;
    std::string op;  // "Lh" or "Lk"
    int expected_sign = 0;
    double value = 0.0;
};

struct SignLemmaReport {
    CompetitionCase cse = CompetitionCase::Coexistence;
    long points_checked = 0;
    std::vector<SignLemmaViolation> violations;
};

/// Evaluates both operators on a grid restricted to each region with an
/// asserted operator sign for the parameters' case, excluding a 1.5-cell band
/// around the nullclines and the equilibria. An empty violation list is the
/// expected outcome.
SignLemmaReport verify_sign_lemmas(const CompetitionParams& p, int grid_n = 200);

struct ConvergenceStats {
    long n_orbits = 0;
    std::vector<std::pair<std::string, long>> attractor_counts;
    long unresolved = 0;
    long max_steps = 0;
    double tol = 0.0;
    std::vector<std::string> diagnostics;
};

struct OutcomeOptions {
    long n_orbits = 1000;
    long max_steps = 10000;
    double tol = 1e-6;
    int hold_steps = 100;  // consecutive near-attractor steps before attribution
    std::optional<Box> start_box;  // default: the map's domain
    std::uint64_t seed = 1;
};

/// Simulates low-discrepancy interior starts and attributes each orbit to the
/// first predicted attractor it approaches within tol and stays near for
/// hold_steps consecutive steps. Non-finite orbits count as unresolved with a
/// diagnostic.
ConvergenceStats verify_global_outcome(const CompetitionParams& p,
                                       const OutcomeOptions& opts = {});

/// Same orbit-attribution driver for an arbitrary map and attractor list
/// (used for the non-competition families, where the candidate set is the
/// computed equilibria). The start box defaults to the map's domain.
ConvergenceStats run_outcome(const PlanarMap& map, const CasePrediction& pred,
                             const OutcomeOptions& opts = {});

struct OrbitAttribution {
    std::optional<std::string> label;  // empty: unresolved
    bool nonfinite = false;
    long steps_used = 0;
};

/// Attribution of a single orbit; exposed so index-swap symmetry can be
/// checked orbit by orbit.
OrbitAttribution attribute_orbit(const PlanarMap& map,
                                 const CasePrediction& pred, Point p0,
                                 long max_steps, double tol, int hold_steps);

struct SegmentEig {
    double x = 0.0;
    double lambda1 = 0.0, lambda2 = 0.0;  // |lambda1| >= |lambda2|
};

struct Case1Demo {
    std::vector<SegmentEig> eigs;  // along the equilibrium segment
    bool rectangle_invariant = false;
    long exits = 0;
    long starts = 0;
    long steps_each = 0;
    double max_limit_to_segment = 0.0;
};

/// For coincident nullclines: reports the (inconclusive) linearization along
/// the segment and empirically confirms that rectangles with two corners on
/// the nullcline trap their orbits, whose limits land on the segment.
Case1Demo case1_stability_demo(const CompetitionParams& p,
                               int n_segment_samples = 11, int n_starts = 200,
                               long n_steps = 4000, std::uint64_t seed = 1);

}  // namespace augmap
