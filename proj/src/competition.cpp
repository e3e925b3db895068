#include "augmap/competition.hpp"

#include <algorithm>
#include <cmath>

#include "augmap/util.hpp"

namespace augmap {

EfficiencyPair efficiencies(const CompetitionParams& p) {
    return {p.r1 / p.alpha1 - p.K2, p.r2 / p.alpha2 - p.K1};
}

const char* to_string(CompetitionCase c) {
    switch (c) {
        case CompetitionCase::DegenerateLine: return "I";
        case CompetitionCase::ExclusionYWins: return "II";
        case CompetitionCase::ExclusionXWins: return "II'";
        case CompetitionCase::Bistable: return "III";
        case CompetitionCase::Coexistence: return "IV";
    }
    return "?";
}

double AttractorDesc::distance(const Point& p) const {
    if (is_segment) return dist_to_segment(p, seg_a, seg_b);
    return dist_inf(p, point);
}

CasePrediction classify(const CompetitionParams& p) {
    CasePrediction pred;
    const EfficiencyPair eff = efficiencies(p);

    auto pt = [](std::string label, Point q) {
        AttractorDesc d;
        d.label = std::move(label);
        d.point = q;
        return d;
    };
    const AttractorDesc e0 = pt("E0", {0.0, 0.0});
    const AttractorDesc e1 = pt("E1", {p.K1, 0.0});
    const AttractorDesc e2 = pt("E2", {0.0, p.K2});

    if (competition_degenerate(p)) {
        pred.cse = CompetitionCase::DegenerateLine;
        AttractorDesc seg;
        seg.label = "E*_X";
        seg.is_segment = true;
        seg.seg_a = {0.0, p.r1 / p.alpha1};
        seg.seg_b = {p.K1, 0.0};
        pred.attractors = {seg};
        pred.unstable = {e0};
        return pred;
    }

    const bool c12_pos = eff.c12 > 0.0;
    const bool c21_pos = eff.c21 > 0.0;
    if (c12_pos && c21_pos) {
        const double den = p.alpha1 * p.alpha2 * p.K1 * p.K2 - p.r1 * p.r2;
        const AttractorDesc estar =
            pt("E*", {p.r2 * p.K1 * (p.alpha1 * p.K2 - p.r1) / den,
                      p.r1 * p.K2 * (p.alpha2 * p.K1 - p.r2) / den});
        pred.cse = CompetitionCase::Coexistence;
        pred.attractors = {estar};
        pred.unstable = {e0, e1, e2};
    } else if (!c12_pos && !c21_pos) {
        const double den = p.alpha1 * p.alpha2 * p.K1 * p.K2 - p.r1 * p.r2;
        const AttractorDesc estar =
            pt("E*", {p.r2 * p.K1 * (p.alpha1 * p.K2 - p.r1) / den,
                      p.r1 * p.K2 * (p.alpha2 * p.K1 - p.r2) / den});
        pred.cse = CompetitionCase::Bistable;
        pred.attractors = {e1, e2, estar};  // E* is a limit only for a measure-zero set
        pred.unstable = {e0, estar};
    } else if (!c12_pos && c21_pos) {
        pred.cse = CompetitionCase::ExclusionYWins;
        pred.attractors = {e2};
        pred.unstable = {e0, e1};
    } else {
        pred.cse = CompetitionCase::ExclusionXWins;
        pred.attractors = {e1};
        pred.unstable = {e0, e2};
    }
    return pred;
}

namespace {

CompetitionParams swap_species(const CompetitionParams& p) {
    return {p.r2, p.r1, p.K2, p.K1, p.alpha2, p.alpha1};
}

struct RegionCheck {
    std::string name;
    int op;             // 0: Lh, 1: Lk
    int expected_sign;  // +1 or -1
    std::function<bool(const Point&)> member;
};

}  // namespace

SignLemmaReport verify_sign_lemmas(const CompetitionParams& p, int grid_n) {
    SignLemmaReport rep;
    const CasePrediction pred = classify(p);
    rep.cse = pred.cse;

    if (pred.cse == CompetitionCase::ExclusionXWins) {
        // check the index-swapped system, then mirror the findings back
        SignLemmaReport mirrored = verify_sign_lemmas(swap_species(p), grid_n);
        rep.points_checked = mirrored.points_checked;
        for (auto v : mirrored.violations) {
            std::swap(v.p.x, v.p.y);
            v.op = (v.op == "Lh") ? "Lk" : "Lh";
            v.region += " (mirrored)";
            rep.violations.push_back(v);
        }
        return rep;
    }

    const PlanarMap map = make_competition(p);
    auto [hc, kc] = competition_nullclines(p);
    const NextIterateOperator Lh = next_iterate_operator(map, hc);
    const NextIterateOperator Lk = next_iterate_operator(map, kc);
    auto h = [&](double x) { return hc.eval(x); };
    auto k = [&](double x) { return kc.eval(x); };

    const Box box = map.domain;
    const double dx = box.width() / grid_n;
    const double dy = box.height() / grid_n;
    const double m = 1.5 * std::hypot(dx, dy);  // exclusion band

    double xs = 0.0, ys = 0.0;
    const EfficiencyPair eff = efficiencies(p);
    if (eff.c12 * eff.c21 > 0.0 && !competition_degenerate(p)) {
        const double den = p.alpha1 * p.alpha2 * p.K1 * p.K2 - p.r1 * p.r2;
        xs = p.r2 * p.K1 * (p.alpha1 * p.K2 - p.r1) / den;
        ys = p.r1 * p.K2 * (p.alpha2 * p.K1 - p.r2) / den;
    }

    auto above = [m](double y, double c) { return y > c + m; };
    auto below = [m](double y, double c) { return y < c - m; };

    std::vector<RegionCheck> checks;
    switch (pred.cse) {
        case CompetitionCase::DegenerateLine:
            checks = {
                {"below_line", 0, -1, [&](const Point& q) { return below(q.y, h(q.x)); }},
                {"below_line", 1, -1, [&](const Point& q) { return below(q.y, h(q.x)); }},
                {"above_line", 0, +1, [&](const Point& q) { return above(q.y, h(q.x)); }},
                {"above_line", 1, +1, [&](const Point& q) { return above(q.y, h(q.x)); }},
            };
            break;
        case CompetitionCase::ExclusionYWins:
            checks = {
                {"above_h", 0, +1, [&](const Point& q) { return above(q.y, h(q.x)); }},
                {"below_k", 1, -1, [&](const Point& q) { return below(q.y, k(q.x)); }},
            };
            break;
        case CompetitionCase::Bistable:
            // nullclines cross at E*; h < k left of it
            checks = {
                {"band_h_k", 0, +1,
                 [&](const Point& q) {
                     return above(q.y, h(q.x)) && below(q.y, k(q.x));
                 }},
                {"above_both_left", 0, +1,
                 [&](const Point& q) {
                     return above(q.y, std::max(h(q.x), k(q.x))) && q.x < xs - m;
                 }},
                {"band_k_h", 0, -1,
                 [&](const Point& q) {
                     return above(q.y, k(q.x)) && below(q.y, h(q.x));
                 }},
                {"below_both_right", 0, -1,
                 [&](const Point& q) {
                     return below(q.y, std::min(h(q.x), k(q.x))) && q.x > xs + m;
                 }},
                {"band_k_h", 1, +1,
                 [&](const Point& q) {
                     return above(q.y, k(q.x)) && below(q.y, h(q.x));
                 }},
                {"above_both_low", 1, +1,
                 [&](const Point& q) {
                     return above(q.y, std::max(h(q.x), k(q.x))) && q.y < ys - m;
                 }},
                {"band_h_k", 1, -1,
                 [&](const Point& q) {
                     return above(q.y, h(q.x)) && below(q.y, k(q.x));
                 }},
                {"below_both_high", 1, -1,
                 [&](const Point& q) {
                     return below(q.y, std::min(h(q.x), k(q.x))) && q.y > ys + m;
                 }},
            };
            break;
        case CompetitionCase::Coexistence:
            // h > k left of E*
            checks = {
                {"band_k_h", 0, -1,
                 [&](const Point& q) {
                     return above(q.y, k(q.x)) && below(q.y, h(q.x));
                 }},
                {"below_both_high", 0, -1,
                 [&](const Point& q) {
                     return below(q.y, std::min(h(q.x), k(q.x))) && q.y > ys + m;
                 }},
                {"band_h_k", 0, +1,
                 [&](const Point& q) {
                     return above(q.y, h(q.x)) && below(q.y, k(q.x));
                 }},
                {"above_both_low", 0, +1,
                 [&](const Point& q) {
                     return above(q.y, std::max(h(q.x), k(q.x))) && q.y < ys - m;
                 }},
                {"band_k_h", 1, +1,
                 [&](const Point& q) {
                     return above(q.y, k(q.x)) && below(q.y, h(q.x));
                 }},
                {"above_both_left", 1, +1,
                 [&](const Point& q) {
                     return above(q.y, std::max(h(q.x), k(q.x))) && q.x < xs - m;
                 }},
                {"band_h_k", 1, -1,
                 [&](const Point& q) {
                     return above(q.y, h(q.x)) && below(q.y, k(q.x));
                 }},
                {"below_both_right", 1, -1,
                 [&](const Point& q) {
                     return below(q.y, std::min(h(q.x), k(q.x))) && q.x > xs + m;
                 }},
            };
            break;
        case CompetitionCase::ExclusionXWins:
            break;  // handled above
    }

    for (int j = 0; j < grid_n; ++j) {
        for (int i = 0; i < grid_n; ++i) {
            const Point q{box.xmin + (i + 0.5) * dx, box.ymin + (j + 0.5) * dy};
            for (const auto& chk : checks) {
                if (!chk.member(q)) continue;
                ++rep.points_checked;
                const double v = (chk.op == 0) ? Lh(q) : Lk(q);
                if ((chk.expected_sign > 0 && !(v > 0.0)) ||
                    (chk.expected_sign < 0 && !(v < 0.0))) {
                    rep.violations.push_back(
                        {q, chk.name, chk.op == 0 ? "Lh" : "Lk",
                         chk.expected_sign, v});
                }
            }
        }
    }
    return rep;
}

OrbitAttribution attribute_orbit(const PlanarMap& map,
                                 const CasePrediction& pred, Point p0,
                                 long max_steps, double tol, int hold_steps) {
    OrbitAttribution out;
    Point p = p0;
    int current = -1;
    int hold = 0;
    for (long t = 0; t <= max_steps; ++t) {
        out.steps_used = t;
        int idx = -1;
        double best = tol;
        for (std::size_t i = 0; i < pred.attractors.size(); ++i) {
            const double d = pred.attractors[i].distance(p);
            if (d < best) {
                best = d;
                idx = static_cast<int>(i);
            }
        }
        if (idx >= 0 && idx == current) {
            if (++hold >= hold_steps) {
                out.label = pred.attractors[idx].label;
                return out;
            }
        } else {
            current = idx;
            hold = (idx >= 0) ? 1 : 0;
        }
        p = step(map, p);
        if (!is_finite(p)) {
            out.nonfinite = true;
            return out;
        }
    }
    return out;
}

ConvergenceStats run_outcome(const PlanarMap& map, const CasePrediction& pred,
                             const OutcomeOptions& opts) {
    const Box box = opts.start_box.value_or(map.domain);

    ConvergenceStats stats;
    stats.n_orbits = opts.n_orbits;
    stats.max_steps = opts.max_steps;
    stats.tol = opts.tol;
    for (const auto& a : pred.attractors) stats.attractor_counts.push_back({a.label, 0});

    R2Sequence seq(opts.seed);
    for (long n = 0; n < opts.n_orbits; ++n) {
        Point p0 = seq.next_in(box);
        while (p0.x <= 0.0 || p0.y <= 0.0) p0 = seq.next_in(box);  // interior starts
        const OrbitAttribution att =
            attribute_orbit(map, pred, p0, opts.max_steps, opts.tol, opts.hold_steps);
        if (att.label) {
            for (auto& [label, count] : stats.attractor_counts) {
                if (label == *att.label) {
                    ++count;
                    break;
                }
            }
        } else {
            ++stats.unresolved;
            if (att.nonfinite) {
                stats.diagnostics.push_back(
                    "non-finite orbit from (" + format_double(p0.x) + ", " +
                    format_double(p0.y) + ")");
            }
        }
    }
    return stats;
}

ConvergenceStats verify_global_outcome(const CompetitionParams& p,
                                       const OutcomeOptions& opts) {
    return run_outcome(make_competition(p), classify(p), opts);
}

Case1Demo case1_stability_demo(const CompetitionParams& p,
                               int n_segment_samples, int n_starts,
                               long n_steps, std::uint64_t seed) {
    Case1Demo demo;
    const PlanarMap map = make_competition(p);
    auto [hc, kc] = competition_nullclines(p);

    for (int i = 0; i < n_segment_samples; ++i) {
        const double x = p.K1 * i / (n_segment_samples - 1);
        const Eig2 e = eig2(jacobian_at(map, {x, hc.eval(x)}));
        demo.eigs.push_back({x, e.l1.real(), e.l2.real()});
    }

    // rectangles with upper-left and lower-right corners on the nullcline
    const Point seg_a{0.0, hc.eval(0.0)};
    const Point seg_b{p.K1, 0.0};
    const double delta = p.K1 / 10.0;
    const double centers[3] = {0.25 * p.K1, 0.5 * p.K1, 0.75 * p.K1};
    const double margin = 1e-12 * std::max(1.0, p.K1 + p.K2);

    R2Sequence seq(seed);
    const int per_rect = std::max(1, n_starts / 3);
    for (double cx : centers) {
        const Box rect{cx - delta, hc.eval(cx + delta), cx + delta,
                       hc.eval(cx - delta)};
        for (int s = 0; s < per_rect; ++s) {
            Point q = seq.next_in(rect);
            ++demo.starts;
            for (long t = 0; t < n_steps; ++t) {
                q = step(map, q);
                if (q.x < rect.xmin - margin || q.x > rect.xmax + margin ||
                    q.y < rect.ymin - margin || q.y > rect.ymax + margin) {
                    ++demo.exits;
                    break;
                }
            }
            demo.max_limit_to_segment = std::max(
                demo.max_limit_to_segment, dist_to_segment(q, seg_a, seg_b));
        }
    }
    demo.steps_each = n_steps;
    demo.rectangle_invariant = (demo.exits == 0);
    return demo;
}

}  // namespace augmap
