#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "augmap/core.hpp"
#include "augmap/numerics.hpp"

namespace augmap {

enum class Family { Competition, Ricker, Mutualism, PredPrey, Generic };

const char* to_string(Family f);

/// Leslie-Gower style competition map
///   X' = (1+r1) X / (1 + (r1/K1) X + alpha1 Y)
///   Y' = (1+r2) Y / (1 + (r2/K2) Y + alpha2 X)
struct CompetitionParams {
    double r1, r2;          // growth rates
    double K1, K2;          // carrying capacities
    double alpha1, alpha2;  // inter-specific impact rates
};

/// Competitive Ricker map
///   X' = X exp(K - X - a Y),  Y' = Y exp(L - b X - Y)
struct RickerParams {
    double K, L;  // carrying capacities
    double a, b;  // competition factors
};

/// Mutualism map
///   X' = (a + b Y) X / (A + B X),  Y' = (c + d X) Y / (C + D Y)
struct MutualismParams {
    double a, b, A, B;
    double c, d, C, D;
};

/// Predator-prey map
///   X' = (1+r) X / (1 + (r/K) X + alpha Y),  Y' = (1 + gamma X) Y / (1 + d)
struct PredPreyParams {
    double r, K, alpha, gamma, d;
};

using ParamSet = std::variant<std::monostate, CompetitionParams, RickerParams,
                              MutualismParams, PredPreyParams>;

using ScalarField = std::function<double(double, double)>;

/// A planar discrete map on the closed first quadrant. Immutable after
/// construction; all operations on it are pure, so instances may be shared
/// freely across threads.
struct PlanarMap {
    Family family = Family::Generic;
    std::string name;
    ParamSet params;
    ScalarField F, G;
    std::function<Mat2(double, double)> analytic_jacobian;  // may be empty
    Box domain;  // default window for plotting/sampling
};

// Factories validate positivity of every parameter and throw
// std::invalid_argument on violation.
PlanarMap make_competition(const CompetitionParams& p);
PlanarMap make_ricker(const RickerParams& p);
PlanarMap make_mutualism(const MutualismParams& p);
PlanarMap make_predprey(const PredPreyParams& p);
PlanarMap make_generic(ScalarField F, ScalarField G, const Box& domain);

Point step(const PlanarMap& map, const Point& p);

struct OrbitResult {
    std::vector<Point> points;  // points[0] == p0
    // index of the first non-finite iterate; the sequence stops there.
    // Overflow is reported, never clamped.
    std::optional<std::size_t> nonfinite_index;
};

OrbitResult orbit(const PlanarMap& map, const Point& p0, std::size_t n);

/// Analytic Jacobian when the family provides one, otherwise central finite
/// differences with step 1e-7 * max(1, ||p||).
Mat2 jacobian_at(const PlanarMap& map, const Point& p);

}  // namespace augmap
