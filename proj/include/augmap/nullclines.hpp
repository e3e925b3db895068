#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "augmap/models.hpp"

namespace augmap {

enum class Orientation { ExplicitInX, ExplicitInY };
enum class Annihilates { XEquation, YEquation };

/// A nontrivial nullcline in explicit form: Y = eval(X) (ExplicitInX) or
/// X = eval(Y) (ExplicitInY). Linear nullclines are evaluated on all of the
/// real line; [dom_lo, dom_hi] only restricts plotting and intersection
/// windows.
struct NullclineCurve {
    Orientation orientation = Orientation::ExplicitInX;
    std::function<double(double)> eval;
    Annihilates annihilates = Annihilates::XEquation;
    double dom_lo = 0.0, dom_hi = 0.0;
    std::string label;  // "h" for the X-equation curve, "k" for the Y-equation curve
};

/// Signed side of p relative to the curve: +1 above (ExplicitInX) or right
/// (ExplicitInY), -1 below/left, 0 within `band`.
int nullcline_side(const NullclineCurve& c, const Point& p, double band = 0.0);

enum class EquilibriumKind { Origin, BoundaryX, BoundaryY, Interior };

const char* to_string(EquilibriumKind k);

struct Equilibrium {
    Point p;
    EquilibriumKind kind = EquilibriumKind::Interior;
};

struct SegmentDesc {
    Point a, b;
    std::string on_label;  // label of the parameterizing nullcline
};

struct EquilibriumSet {
    std::vector<Equilibrium> isolated;
    std::optional<SegmentDesc> continuum;  // present only when the nontrivial
                                           // nullclines coincide
    std::vector<std::string> diagnostics;  // per-seed Newton failures, never fatal
};

enum class Sign { Minus = -1, Zero = 0, Plus = 1 };

inline Sign sign_of(double v, double band) {
    if (std::abs(v) <= band) return Sign::Zero;
    return v > 0 ? Sign::Plus : Sign::Minus;
}

struct DirectionSigns {
    Sign dx = Sign::Zero;  // sign of F(p) - p.x
    Sign dy = Sign::Zero;  // sign of G(p) - p.y
};

struct UnsupportedFamily : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::pair<NullclineCurve, NullclineCurve> competition_nullclines(
    const CompetitionParams& p);

/// Nontrivial nullclines of the built-in families. Throws UnsupportedFamily
/// for Generic maps (trace F-X and G-Y instead).
std::vector<NullclineCurve> model_nullclines(const PlanarMap& map);

/// All biologically relevant equilibria. Competition uses the closed forms
/// (with relative-threshold detection of the degenerate coincident-nullcline
/// case); the other built-ins intersect their analytic nullclines and polish
/// with Newton; Generic seeds Newton from pairwise intersections of traced
/// nullclines over map.domain.
EquilibriumSet equilibria(const PlanarMap& map);

DirectionSigns direction_signs(const PlanarMap& map, const Point& p,
                               double band = 1e-9);

/// Relative threshold under which the competitive efficiencies are treated
/// as exactly zero (coincident nullclines).
bool competition_degenerate(const CompetitionParams& p);

}  // namespace augmap
