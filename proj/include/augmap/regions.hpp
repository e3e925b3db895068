#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "augmap/next_iterate.hpp"
#include "augmap/trace.hpp"

namespace augmap {

struct GridSpec {
    Box box;
    int nx = 0, ny = 0;

    double dx() const { return box.width() / nx; }
    double dy() const { return box.height() / ny; }
    int cell_index(int ix, int iy) const { return iy * nx + ix; }
    Point cell_center(int ix, int iy) const {
        return {box.xmin + (ix + 0.5) * dx(), box.ymin + (iy + 0.5) * dy()};
    }
    Point center_of(int cell) const { return cell_center(cell % nx, cell / nx); }
};

/// A connected open region of the grid, bounded by nullclines, root-curves
/// and/or the axes, with constant direction-field and operator signs.
struct SignedRegion {
    int id = -1;
    std::vector<int> cells;  // row-major grid-cell indices
    DirectionSigns direction;
    std::vector<std::pair<std::string, Sign>> op_signs;  // one per nontrivial nullcline
    std::vector<int> nullcline_sides;  // -1 below/left, +1 above/right, per nullcline
    std::vector<int> adjacency;        // neighboring region ids
    double area_fraction = 0.0;
    Point representative{};
    bool signs_consistent = true;  // false signals under-resolution
};

struct Decomposition {
    GridSpec grid;
    std::vector<SignedRegion> regions;
    std::vector<int> cell_region;  // -1 for curve / exclusion-band cells
    long excluded_cells = 0;
    std::vector<std::string> nullcline_labels;
    std::vector<int> inconsistent_regions;
};

/// Flood-fill decomposition of the grid into connected components of cells
/// not crossed by (and not within a 1.5-cell band of) the nullclines and,
/// when include_root_curves is set, the operators' root-curves. Each region
/// is labeled with signs sampled at its cell centers.
Decomposition decompose(const PlanarMap& map,
                        const std::vector<NullclineCurve>& nullclines,
                        const TraceConfig& cfg, bool include_root_curves = true);

enum class VerdictKind { ProvenBySigns, EmpiricallySupported, Counterexample };

const char* to_string(VerdictKind v);

struct InvarianceVerdict {
    int region_id = -1;
    VerdictKind kind = VerdictKind::EmpiricallySupported;
    long samples = 0;
    long steps = 0;
    Point counterexample{};  // orbit start whose orbit leaves the region
    long exit_step = -1;
};

struct InvarianceOptions {
    int n_starts = 200;
    long n_steps = 500;
    std::uint64_t seed = 1;
};

/// Positive-invariance verdict for one region. ProvenBySigns implements the
/// two-sided sign argument: the region must be a full connected component of
/// the band between the two nontrivial nullclines, with the operator of the
/// lower bounding nullcline positive and the upper one negative throughout
/// that component. Anything else falls back to orbit sampling.
InvarianceVerdict certify_invariance(const PlanarMap& map,
                                     const std::vector<NullclineCurve>& nullclines,
                                     const Decomposition& dec,
                                     const SignedRegion& region,
                                     const InvarianceOptions& opts = {});

/// Pairs (A, B) where A carries (+,+) operator signs, B carries (-,-), and
/// one of them lies below/left of every nullcline while the other lies
/// above/right: the configuration in which orbits may keep jumping across
/// both nullclines.
std::vector<std::pair<int, int>> oscillation_risk(const Decomposition& dec);

struct BoxLemmaResult {
    bool ok = false;
    long sampled = 0;
    long violations = 0;
};

/// Samples the region below both nullclines and left/below the coexistence
/// equilibrium and checks that no point maps into the mirrored region above
/// both nullclines beyond it.
BoxLemmaResult box_lemma_check(const CompetitionParams& p,
                               long n_samples = 100000, std::uint64_t seed = 1);

/// Scans a coarse grid for a start whose single iterate lands on the
/// opposite side of both nontrivial nullclines.
std::optional<Point> find_double_nullcline_jump(
    const PlanarMap& map, const std::vector<NullclineCurve>& nullclines,
    const Box& box, int grid_n = 64);

/// Scans the region below both nontrivial nullclines for a start whose
/// single iterate leaves it.
std::optional<Point> find_exit_from_below_region(
    const PlanarMap& map, const std::vector<NullclineCurve>& nullclines,
    const Box& box, int grid_n = 64);

}  // namespace augmap
