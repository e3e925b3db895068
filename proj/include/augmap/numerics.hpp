#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>

#include "augmap/core.hpp"

namespace augmap {

/// 2x2 real matrix, row-major: [a b; c d].
struct Mat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    double norm_inf() const;
};

/// Eigenvalues ordered by descending modulus (ties broken by real part, then
/// imaginary part, so the ordering is deterministic).
struct Eig2 {
    std::complex<double> l1, l2;
};

Eig2 eig2(const Mat2& m);

// Solves m * [x;y] = rhs. Returns nullopt when the condition estimate
// exceeds 1e12.
std::optional<Point> solve2x2(const Mat2& m, const Point& rhs);

using PlanarField = std::function<std::array<double, 2>(const Point&)>;

struct NewtonOptions {
    double tol = 1e-12;      // convergence: ||step||_inf and ||f||_inf below this
    int max_iter = 50;
    double box_factor = 10;  // divergence once the iterate leaves this multiple
                             // of the seed's bounding scale
};

struct NewtonResult {
    Point root{};
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
    bool singular_encountered = false;
};

/// Damped Newton for planar systems. `jac` may be empty, in which case a
/// central finite-difference Jacobian with step 1e-7*max(1,||p||) is used.
/// The result is post-verified: `converged` is only set when the residual
/// actually meets the tolerance.
NewtonResult newton2(const PlanarField& f,
                     const std::function<Mat2(const Point&)>& jac,
                     Point seed, const NewtonOptions& opts = {});

enum class BisectStatus { Converged, NoSignChange };

struct BisectResult {
    double root = 0.0;
    BisectStatus status = BisectStatus::NoSignChange;
};

/// Bisection on [lo, hi]; requires a sign change. Shrinks the bracket until
/// its width falls below `tol` (clamped to a few ulps).
BisectResult bisect(const std::function<double(double)>& g, double lo,
                    double hi, double tol);

/// SplitMix64: tiny deterministic RNG; identical seeds reproduce identical
/// streams on every platform.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform();  // in [0, 1)
    double uniform(double lo, double hi);

  private:
    std::uint64_t state_;
};

/// 2D additive-recurrence low-discrepancy sequence based on the plastic
/// constant. `skip` offsets the start index so streams are reproducible and
/// splittable.
class R2Sequence {
  public:
    explicit R2Sequence(std::uint64_t skip = 0) : n_(skip) {}

    Point next();                 // in [0,1)^2
    Point next_in(const Box& b);  // affinely mapped into b

  private:
    std::uint64_t n_;
};

}  // namespace augmap
