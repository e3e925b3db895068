#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "augmap/nullclines.hpp"

namespace augmap {

/// Next-iterate operator of a nullcline. For Y = l(X) the value is
/// G(p) - l(F(p)): positive iff the image of p lies above the nullcline.
/// For X = kappa(Y) it is F(p) - kappa(G(p)): positive iff the image lies to
/// the right.
struct NextIterateOperator {
    PlanarMap map;
    NullclineCurve nullcline;

    double operator()(const Point& p) const;
};

NextIterateOperator next_iterate_operator(const PlanarMap& map,
                                          const NullclineCurve& nc);

inline double eval_operator(const NextIterateOperator& op, const Point& p) {
    return op(p);
}

/// Quadratic forms of the competition operators: the numerator of L_h is
/// a0(X) + a1(X) Y + a2 Y^2 = A0(Y) + A1(Y) X + A2 X^2, and of L_k is
/// b0(X) + b1(X) Y + b2 Y^2 = B0(Y) + B1(Y) X + B2 X^2.
struct QuadraticRootCoeffs {
    std::function<double(double)> a0, a1;
    double a2 = 0.0;
    std::function<double(double)> A0, A1;
    double A2 = 0.0;
    std::function<double(double)> b0, b1;
    double b2 = 0.0;
    std::function<double(double)> B0, B1;
    double B2 = 0.0;
};

QuadraticRootCoeffs competition_quadratics(const CompetitionParams& p);

// numerators evaluated through each quadratic form
double numerator_h(const QuadraticRootCoeffs& q, double X, double Y);        // a-form
double numerator_h_xform(const QuadraticRootCoeffs& q, double X, double Y);  // A-form
double numerator_k(const QuadraticRootCoeffs& q, double X, double Y);        // b-form
double numerator_k_xform(const QuadraticRootCoeffs& q, double X, double Y);  // B-form

// Rational (quotient) evaluation path for the competition operators;
// algebraically identical to the compositional path, numerically independent.
double quotient_Lh(const CompetitionParams& p, double X, double Y);
double quotient_Lk(const CompetitionParams& p, double X, double Y);

enum class BranchId { rh1, rh2, Rh1, Rh2, rk1, rk2, Rk1, Rk2 };

const char* to_string(BranchId id);

struct BranchValue {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool ok = false;  // false: negative discriminant at this abscissa
};

/// One closed-form root-curve branch of a competition next-iterate operator.
/// rh*/rk* are graphs Y = r(X); Rh*/Rk* are graphs X = R(Y). When the leading
/// quadratic coefficient vanishes the branch degenerates to the linear
/// fallback root. Branches whose values never enter the first-quadrant
/// window are flagged (in_window = false), not dropped.
struct RootCurveBranch {
    BranchId id{};
    Orientation orientation = Orientation::ExplicitInX;
    std::string nullcline_label;
    std::function<BranchValue(double)> eval;
    bool in_window = false;
};

std::vector<RootCurveBranch> closed_form_root_curves(const CompetitionParams& p,
                                                     const Box& window);

struct RootNullclineScan {
    std::vector<Point> zeros;
    // set when the operator vanishes along (almost) the whole nullcline, i.e.
    // the root-curve coincides with it
    bool identically_zero = false;
};

/// Zeros of the operator restricted to the nullcline within the window,
/// located by a fine scan plus bisection. These are exactly the equilibria
/// on the nullcline (for X-equation nullclines unconditionally, for
/// Y-equation nullclines when the graph is injective).
RootNullclineScan root_set_nullcline_intersections(const PlanarMap& map,
                                                   const NullclineCurve& nc,
                                                   const NextIterateOperator& op,
                                                   const Box& window,
                                                   double scan_step_rel = 1e-4);

/// True iff p lies in both competition root-sets (|L_h| and |L_k| below tol),
/// i.e. p is mapped to an equilibrium in one iteration.
bool joint_root_preimage_check(const CompetitionParams& p, const Point& pt,
                               double tol = 1e-8);

}  // namespace augmap
