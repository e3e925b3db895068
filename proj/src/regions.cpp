#include "augmap/regions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

namespace augmap {

const char* to_string(VerdictKind v) {
    switch (v) {
        case VerdictKind::ProvenBySigns: return "proven_by_signs";
        case VerdictKind::EmpiricallySupported: return "empirically_supported";
        case VerdictKind::Counterexample: return "counterexample";
    }
    return "?";
}

namespace {

// Cells whose corner samples of `field` take both signs; non-finite samples
// also mark the cell.
std::vector<bool> curve_cells(const GridSpec& g,
                              const std::function<double(double, double)>& field) {
    const int nx = g.nx, ny = g.ny;
    std::vector<double> vals(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j) {
        const double y = g.box.ymin + j * g.dy();
        for (int i = 0; i <= nx; ++i) {
            vals[static_cast<std::size_t>(j) * (nx + 1) + i] =
                field(g.box.xmin + i * g.dx(), y);
        }
    }
    std::vector<bool> mask(static_cast<std::size_t>(nx) * ny, false);
    auto v = [&](int i, int j) {
        return vals[static_cast<std::size_t>(j) * (nx + 1) + i];
    };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double c[4] = {v(i, j), v(i + 1, j), v(i + 1, j + 1),
                                 v(i, j + 1)};
            bool pos = false, neg = false, bad = false;
            for (double x : c) {
                if (!std::isfinite(x)) bad = true;
                else if (x >= 0) pos = true;
                else neg = true;
            }
            if (bad || (pos && neg)) mask[g.cell_index(i, j)] = true;
        }
    }
    return mask;
}

// Chebyshev-1 dilation: with the curve passing through the seed cell this
// gives the 1.5-cell exclusion band.
std::vector<bool> dilate(const GridSpec& g, const std::vector<bool>& mask) {
    std::vector<bool> out(mask.size(), false);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (!mask[g.cell_index(i, j)]) continue;
            for (int dj = -1; dj <= 1; ++dj) {
                for (int di = -1; di <= 1; ++di) {
                    const int ii = i + di, jj = j + dj;
                    if (ii >= 0 && ii < g.nx && jj >= 0 && jj < g.ny) {
                        out[g.cell_index(ii, jj)] = true;
                    }
                }
            }
        }
    }
    return out;
}

std::function<double(double, double)> side_field(const NullclineCurve& nc) {
    if (nc.orientation == Orientation::ExplicitInX) {
        return [nc](double x, double y) { return y - nc.eval(x); };
    }
    return [nc](double x, double y) { return x - nc.eval(y); };
}

std::vector<int> flood_fill(const GridSpec& g, const std::vector<bool>& excluded,
                            int& n_regions) {
    std::vector<int> region(excluded.size(), -1);
    n_regions = 0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int c0 = g.cell_index(i, j);
            if (excluded[c0] || region[c0] >= 0) continue;
            const int id = n_regions++;
            std::deque<int> queue{c0};
            region[c0] = id;
            while (!queue.empty()) {
                const int c = queue.front();
                queue.pop_front();
                const int ci = c % g.nx, cj = c / g.nx;
                const int nbr[4][2] = {
                    {ci - 1, cj}, {ci + 1, cj}, {ci, cj - 1}, {ci, cj + 1}};
                for (const auto& [ni, nj] : nbr) {
                    if (ni < 0 || ni >= g.nx || nj < 0 || nj >= g.ny) continue;
                    const int nc = g.cell_index(ni, nj);
                    if (!excluded[nc] && region[nc] < 0) {
                        region[nc] = id;
                        queue.push_back(nc);
                    }
                }
            }
        }
    }
    return region;
}

}  // namespace

Decomposition decompose(const PlanarMap& map,
                        const std::vector<NullclineCurve>& nullclines,
                        const TraceConfig& cfg, bool include_root_curves) {
    Decomposition dec;
    dec.grid = GridSpec{cfg.bbox, cfg.grid_nx, cfg.grid_ny};
    const GridSpec& g = dec.grid;

    std::vector<NextIterateOperator> ops;
    ops.reserve(nullclines.size());
    for (const auto& nc : nullclines) {
        ops.push_back(next_iterate_operator(map, nc));
        dec.nullcline_labels.push_back(nc.label);
    }

    std::vector<bool> excluded(static_cast<std::size_t>(g.nx) * g.ny, false);
    auto merge = [&](const std::vector<bool>& m) {
        for (std::size_t c = 0; c < m.size(); ++c) {
            if (m[c]) excluded[c] = true;
        }
    };
    for (const auto& nc : nullclines) merge(curve_cells(g, side_field(nc)));
    if (include_root_curves) {
        for (const auto& op : ops) {
            merge(curve_cells(g, [&op](double x, double y) {
                return op(Point{x, y});
            }));
        }
    }
    excluded = dilate(g, excluded);

    int n_regions = 0;
    dec.cell_region = flood_fill(g, excluded, n_regions);

    // components of fewer than 4 cells are grid artifacts (slivers pinched
    // off near curve crossings); fold them into the exclusion band
    {
        std::vector<long> count(n_regions, 0);
        for (int r : dec.cell_region) {
            if (r >= 0) ++count[r];
        }
        std::vector<int> remap(n_regions, -1);
        int kept = 0;
        for (int r = 0; r < n_regions; ++r) {
            if (count[r] >= 4) remap[r] = kept++;
        }
        for (auto& r : dec.cell_region) {
            if (r >= 0) r = remap[r];
        }
        n_regions = kept;
    }
    dec.excluded_cells =
        std::count(dec.cell_region.begin(), dec.cell_region.end(), -1);

    dec.regions.resize(n_regions);
    for (int r = 0; r < n_regions; ++r) dec.regions[r].id = r;
    for (int c = 0; c < static_cast<int>(dec.cell_region.size()); ++c) {
        if (dec.cell_region[c] >= 0) {
            dec.regions[dec.cell_region[c]].cells.push_back(c);
        }
    }

    const double band = 1e-9;
    for (auto& reg : dec.regions) {
        reg.area_fraction =
            static_cast<double>(reg.cells.size()) / (g.nx * g.ny);
        reg.op_signs.assign(nullclines.size(), {});
        reg.nullcline_sides.assign(nullclines.size(), 0);

        bool first = true;
        double cx = 0.0, cy = 0.0;
        for (int c : reg.cells) {
            const Point p = g.center_of(c);
            cx += p.x;
            cy += p.y;
            const DirectionSigns ds = direction_signs(map, p, band);
            for (std::size_t i = 0; i < ops.size(); ++i) {
                const Sign os = sign_of(ops[i](p), band);
                const int side = nullcline_side(nullclines[i], p, band);
                if (first) {
                    reg.op_signs[i] = {nullclines[i].label, os};
                    reg.nullcline_sides[i] = side;
                } else if (reg.op_signs[i].second != os ||
                           reg.nullcline_sides[i] != side) {
                    reg.signs_consistent = false;
                }
            }
            if (first) {
                reg.direction = ds;
            } else if (reg.direction.dx != ds.dx || reg.direction.dy != ds.dy) {
                reg.signs_consistent = false;
            }
            first = false;
        }
        if (!reg.cells.empty()) {
            // snap the centroid to the nearest cell of the region so the
            // representative always lies inside it
            const Point centroid{cx / reg.cells.size(), cy / reg.cells.size()};
            double best = std::numeric_limits<double>::infinity();
            for (int c : reg.cells) {
                const Point p = g.center_of(c);
                const double d = dist_inf(p, centroid);
                if (d < best) {
                    best = d;
                    reg.representative = p;
                }
            }
        }
        if (!reg.signs_consistent) dec.inconsistent_regions.push_back(reg.id);
    }

    // adjacency: regions whose cells come within 3 cells of each other are
    // separated only by the exclusion band
    std::set<std::pair<int, int>> adj;
    const int reach = 3;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int r0 = dec.cell_region[g.cell_index(i, j)];
            if (r0 < 0) continue;
            for (int dj = 0; dj <= reach; ++dj) {
                for (int di = (dj == 0 ? 1 : -reach); di <= reach; ++di) {
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || ii >= g.nx || jj >= g.ny) continue;
                    const int r1 = dec.cell_region[g.cell_index(ii, jj)];
                    if (r1 >= 0 && r1 != r0) {
                        adj.insert({std::min(r0, r1), std::max(r0, r1)});
                    }
                }
            }
        }
    }
    for (const auto& [a, b] : adj) {
        dec.regions[a].adjacency.push_back(b);
        dec.regions[b].adjacency.push_back(a);
    }
    return dec;
}

namespace {

// Connected component (4-connectivity) of `mask` containing `seed_cell`.
std::vector<bool> component_of(const GridSpec& g, const std::vector<bool>& mask,
                               int seed_cell) {
    std::vector<bool> comp(mask.size(), false);
    if (!mask[seed_cell]) return comp;
    std::deque<int> queue{seed_cell};
    comp[seed_cell] = true;
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        const int ci = c % g.nx, cj = c / g.nx;
        const int nbr[4][2] = {{ci - 1, cj}, {ci + 1, cj}, {ci, cj - 1}, {ci, cj + 1}};
        for (const auto& [ni, nj] : nbr) {
            if (ni < 0 || ni >= g.nx || nj < 0 || nj >= g.ny) continue;
            const int nc = g.cell_index(ni, nj);
            if (mask[nc] && !comp[nc]) {
                comp[nc] = true;
                queue.push_back(nc);
            }
        }
    }
    return comp;
}

}  // namespace

InvarianceVerdict certify_invariance(const PlanarMap& map,
                                     const std::vector<NullclineCurve>& nullclines,
                                     const Decomposition& dec,
                                     const SignedRegion& region,
                                     const InvarianceOptions& opts) {
    InvarianceVerdict verdict;
    verdict.region_id = region.id;
    const GridSpec& g = dec.grid;

    const bool two_graphs =
        nullclines.size() == 2 &&
        nullclines[0].orientation == Orientation::ExplicitInX &&
        nullclines[1].orientation == Orientation::ExplicitInX;

    if (two_graphs && !region.cells.empty()) {
        bool in_band = true;
        for (int c : region.cells) {
            const Point p = g.center_of(c);
            const double l0 = nullclines[0].eval(p.x);
            const double l1 = nullclines[1].eval(p.x);
            if (!(p.y > std::min(l0, l1) && p.y < std::max(l0, l1))) {
                in_band = false;
                break;
            }
        }
        if (in_band) {
            // the band mask is cut only by the nullclines themselves, so the
            // component below recovers the full band piece even when the
            // decomposition was further split by root-curves
            std::vector<bool> ncmask(static_cast<std::size_t>(g.nx) * g.ny, false);
            for (const auto& nc : nullclines) {
                const auto cc = curve_cells(g, side_field(nc));
                for (std::size_t i = 0; i < cc.size(); ++i) {
                    if (cc[i]) ncmask[i] = true;
                }
            }
            ncmask = dilate(g, ncmask);
            std::vector<bool> band_mask(ncmask.size(), false);
            for (int j = 0; j < g.ny; ++j) {
                for (int i = 0; i < g.nx; ++i) {
                    const int c = g.cell_index(i, j);
                    if (ncmask[c]) continue;
                    const Point p = g.cell_center(i, j);
                    const double l0 = nullclines[0].eval(p.x);
                    const double l1 = nullclines[1].eval(p.x);
                    band_mask[c] = p.y > std::min(l0, l1) && p.y < std::max(l0, l1);
                }
            }
            const auto comp = component_of(g, band_mask, region.cells.front());

            const NextIterateOperator op0 = next_iterate_operator(map, nullclines[0]);
            const NextIterateOperator op1 = next_iterate_operator(map, nullclines[1]);
            bool proven = true;
            for (std::size_t c = 0; c < comp.size() && proven; ++c) {
                if (!comp[c]) continue;
                const Point p = g.center_of(static_cast<int>(c));
                const bool first_is_lower =
                    nullclines[0].eval(p.x) < nullclines[1].eval(p.x);
                const double v_lower = first_is_lower ? op0(p) : op1(p);
                const double v_upper = first_is_lower ? op1(p) : op0(p);
                // inward pair: image above the lower curve, below the upper
                if (!(v_lower > 0.0) || !(v_upper < 0.0)) proven = false;
            }
            if (proven) {
                verdict.kind = VerdictKind::ProvenBySigns;
                return verdict;
            }
        }
    }

    // empirical fallback: sampled orbits, membership by nullcline sides
    const double exit_band =
        1e-11 * std::max(1.0, std::max(std::abs(g.box.xmax), std::abs(g.box.ymax)));
    R2Sequence seq(opts.seed);
    long found = 0;
    long attempts = 0;
    const long max_attempts = 1000L * opts.n_starts;
    while (found < opts.n_starts && attempts < max_attempts) {
        ++attempts;
        const Point p0 = seq.next_in(g.box);
        const int ix = static_cast<int>((p0.x - g.box.xmin) / g.dx());
        const int iy = static_cast<int>((p0.y - g.box.ymin) / g.dy());
        if (ix < 0 || ix >= g.nx || iy < 0 || iy >= g.ny) continue;
        if (dec.cell_region[g.cell_index(ix, iy)] != region.id) continue;
        ++found;

        Point p = p0;
        for (long t = 1; t <= opts.n_steps; ++t) {
            p = step(map, p);
            if (!is_finite(p)) break;
            for (std::size_t i = 0; i < nullclines.size(); ++i) {
                const int side = nullcline_side(nullclines[i], p, exit_band);
                if (side != 0 && side == -region.nullcline_sides[i]) {
                    verdict.kind = VerdictKind::Counterexample;
                    verdict.counterexample = p0;
                    verdict.exit_step = t;
                    verdict.samples = found;
                    verdict.steps = opts.n_steps;
                    return verdict;
                }
            }
        }
    }
    verdict.kind = VerdictKind::EmpiricallySupported;
    verdict.samples = found;
    verdict.steps = opts.n_steps;
    return verdict;
}

std::vector<std::pair<int, int>> oscillation_risk(const Decomposition& dec) {
    std::vector<std::pair<int, int>> pairs;
    auto all_ops = [](const SignedRegion& r, Sign s) {
        if (r.op_signs.empty()) return false;
        return std::all_of(r.op_signs.begin(), r.op_signs.end(),
                           [s](const auto& o) { return o.second == s; });
    };
    auto all_sides = [](const SignedRegion& r, int side) {
        if (r.nullcline_sides.empty()) return false;
        return std::all_of(r.nullcline_sides.begin(), r.nullcline_sides.end(),
                           [side](int s) { return s == side; });
    };
    for (const auto& a : dec.regions) {
        // a (+,+) region below/left of every nullcline jumps across them all;
        // paired with a (-,-) region above/right, orbits may ping-pong
        if (!all_ops(a, Sign::Plus) || !all_sides(a, -1)) continue;
        for (const auto& b : dec.regions) {
            if (!all_ops(b, Sign::Minus) || !all_sides(b, +1)) continue;
            pairs.emplace_back(a.id, b.id);
        }
    }
    return pairs;
}

BoxLemmaResult box_lemma_check(const CompetitionParams& p, long n_samples,
                               std::uint64_t seed) {
    BoxLemmaResult res;
    const double c12 = p.r1 / p.alpha1 - p.K2;
    const double c21 = p.r2 / p.alpha2 - p.K1;
    if (!(c12 * c21 > 0.0)) return res;  // defined only when E* exists

    const PlanarMap map = make_competition(p);
    auto [h, k] = competition_nullclines(p);
    const double den = p.alpha1 * p.alpha2 * p.K1 * p.K2 - p.r1 * p.r2;
    const double xs = p.r2 * p.K1 * (p.alpha1 * p.K2 - p.r1) / den;
    const double ys = p.r1 * p.K2 * (p.alpha2 * p.K1 - p.r2) / den;

    R2Sequence seq(seed);
    const Box d1_box{0.0, 0.0, xs, ys};
    long kept = 0;
    long tries = 0;
    const long max_tries = 50 * n_samples;
    while (kept < n_samples && tries < max_tries) {
        ++tries;
        const Point q = seq.next_in(d1_box);
        if (q.x <= 0.0 || q.y <= 0.0) continue;
        if (!(q.y < std::min(h.eval(q.x), k.eval(q.x)))) continue;  // below both
        ++kept;
        const Point img = step(map, q);
        if (img.x >= xs && img.y >= ys &&
            img.y > std::max(h.eval(img.x), k.eval(img.x))) {
            ++res.violations;
        }
    }
    res.sampled = kept;
    res.ok = (res.violations == 0) && kept > 0;
    return res;
}

namespace {

std::optional<Point> scan_grid(const Box& box, int n,
                               const std::function<bool(const Point&)>& pred) {
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Point p{box.xmin + (i + 0.5) * box.width() / n,
                          box.ymin + (j + 0.5) * box.height() / n};
            if (pred(p)) return p;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Point> find_double_nullcline_jump(
    const PlanarMap& map, const std::vector<NullclineCurve>& nullclines,
    const Box& box, int grid_n) {
    if (nullclines.size() != 2) return std::nullopt;
    return scan_grid(box, grid_n, [&](const Point& p) {
        const int s0 = nullcline_side(nullclines[0], p, 1e-12);
        const int s1 = nullcline_side(nullclines[1], p, 1e-12);
        if (s0 == 0 || s1 == 0) return false;
        const Point q = step(map, p);
        if (!is_finite(q)) return false;
        return nullcline_side(nullclines[0], q, 1e-12) == -s0 &&
               nullcline_side(nullclines[1], q, 1e-12) == -s1;
    });
}

std::optional<Point> find_exit_from_below_region(
    const PlanarMap& map, const std::vector<NullclineCurve>& nullclines,
    const Box& box, int grid_n) {
    if (nullclines.size() != 2) return std::nullopt;
    return scan_grid(box, grid_n, [&](const Point& p) {
        if (p.x <= 0 || p.y <= 0) return false;
        if (nullcline_side(nullclines[0], p, 1e-12) >= 0 ||
            nullcline_side(nullclines[1], p, 1e-12) >= 0) {
            return false;  // not below both
        }
        const Point q = step(map, p);
        if (!is_finite(q)) return false;
        return nullcline_side(nullclines[0], q, 1e-12) > 0 ||
               nullcline_side(nullclines[1], q, 1e-12) > 0;
    });
}

}  // namespace augmap
