#include "augmap/report.hpp"

#include <cmath>

namespace augmap {

namespace {

const char* sign_str(Sign s) {
    switch (s) {
        case Sign::Plus: return "+";
        case Sign::Zero: return "0";
        case Sign::Minus: return "-";
    }
    return "?";
}

std::string equilibrium_label(const Equilibrium& e, int interior_index,
                              int n_interior) {
    switch (e.kind) {
        case EquilibriumKind::Origin: return "E0";
        case EquilibriumKind::BoundaryX: return "E1";
        case EquilibriumKind::BoundaryY: return "E2";
        case EquilibriumKind::Interior:
            return n_interior > 1 ? "E*_" + std::to_string(interior_index + 1)
                                  : "E*";
    }
    return "E?";
}

std::string stability_tag(const Eig2& e) {
    const double m1 = std::abs(e.l1), m2 = std::abs(e.l2);
    const double tol = 1e-9;
    if (m1 < 1.0 - tol && m2 < 1.0 - tol) return "stable";
    if (m1 > 1.0 + tol && m2 > 1.0 + tol) return "repeller";
    if (std::abs(m1 - 1.0) <= tol || std::abs(m2 - 1.0) <= tol) return "nonhyperbolic";
    return "saddle";
}

}  // namespace

Analysis analyze_map(const Config& cfg) {
    Analysis an;
    an.map = cfg.map;
    an.eqs = equilibria(an.map);

    TraceConfig tc;
    tc.bbox = cfg.window();
    tc.grid_nx = cfg.grid_nx;
    tc.grid_ny = cfg.grid_ny;

    if (an.map.family == Family::Generic) {
        an.traced_x_nullclines =
            trace_zero_set([&](double x, double y) { return an.map.F(x, y) - x; }, tc)
                .curves;
        an.traced_y_nullclines =
            trace_zero_set([&](double x, double y) { return an.map.G(x, y) - y; }, tc)
                .curves;
        return an;
    }

    an.nullclines = model_nullclines(an.map);
    an.full = decompose(an.map, an.nullclines, tc, true);
    an.monotone = decompose(an.map, an.nullclines, tc, false);
    for (const auto& reg : an.monotone->regions) {
        InvarianceOptions opts;
        opts.seed = cfg.seed + static_cast<std::uint64_t>(reg.id);
        an.verdicts.push_back(
            certify_invariance(an.map, an.nullclines, *an.monotone, reg, opts));
    }
    an.risk = oscillation_risk(*an.full);
    if (an.map.family == Family::Competition) {
        an.prediction = classify(std::get<CompetitionParams>(an.map.params));
    }
    return an;
}

nlohmann::ordered_json analyze(const Config& cfg) {
    using json = nlohmann::ordered_json;
    const Analysis an = analyze_map(cfg);

    json rep;
    rep["model"] = cfg.model;
    rep["params"] = cfg.params_echo;

    // equilibria with local stability from the Jacobian spectrum
    json eq_list = json::array();
    int n_interior = 0;
    for (const auto& e : an.eqs.isolated) {
        if (e.kind == EquilibriumKind::Interior) ++n_interior;
    }
    int interior_seen = 0;
    for (const auto& e : an.eqs.isolated) {
        const Eig2 ev = eig2(jacobian_at(an.map, e.p));
        json entry;
        entry["label"] = equilibrium_label(
            e, e.kind == EquilibriumKind::Interior ? interior_seen++ : 0,
            n_interior);
        entry["point"] = {e.p.x, e.p.y};
        entry["kind"] = to_string(e.kind);
        entry["eigenvalues"] = {{ev.l1.real(), ev.l1.imag()},
                                {ev.l2.real(), ev.l2.imag()}};
        entry["moduli"] = {std::abs(ev.l1), std::abs(ev.l2)};
        entry["stability"] = stability_tag(ev);
        if (an.prediction) {
            for (const auto& a : an.prediction->attractors) {
                if (!a.is_segment && dist_inf(a.point, e.p) < 1e-9) {
                    entry["role"] = "attractor";
                }
            }
            for (const auto& u : an.prediction->unstable) {
                if (!u.is_segment && dist_inf(u.point, e.p) < 1e-9) {
                    entry["role"] = entry.contains("role") ? "attractor_unstable"
                                                           : "unstable";
                }
            }
        }
        eq_list.push_back(entry);
    }
    if (an.eqs.continuum) {
        json entry;
        entry["label"] = "E*_X";
        entry["kind"] = "segment";
        entry["a"] = {an.eqs.continuum->a.x, an.eqs.continuum->a.y};
        entry["b"] = {an.eqs.continuum->b.x, an.eqs.continuum->b.y};
        entry["on"] = an.eqs.continuum->on_label;
        eq_list.push_back(entry);
    }
    rep["equilibria"] = eq_list;

    if (an.prediction) {
        rep["case"] = to_string(an.prediction->cse);
        json ats = json::array();
        for (const auto& a : an.prediction->attractors) {
            json ad;
            ad["label"] = a.label;
            if (a.is_segment) {
                ad["segment"] = {{a.seg_a.x, a.seg_a.y}, {a.seg_b.x, a.seg_b.y}};
            } else {
                ad["point"] = {a.point.x, a.point.y};
            }
            ats.push_back(ad);
        }
        rep["predicted_attractors"] = ats;
    }

    json regions = json::array();
    if (an.full) {
        for (const auto& r : an.full->regions) {
            json jr;
            jr["id"] = r.id;
            jr["direction"] = {sign_str(r.direction.dx), sign_str(r.direction.dy)};
            json ops;
            for (const auto& [label, s] : r.op_signs) ops[label] = sign_str(s);
            jr["op_signs"] = ops;
            json sides;
            for (std::size_t i = 0; i < r.nullcline_sides.size(); ++i) {
                sides[an.full->nullcline_labels[i]] = r.nullcline_sides[i];
            }
            jr["sides"] = sides;
            jr["between_nullclines"] =
                r.nullcline_sides.size() == 2 &&
                r.nullcline_sides[0] * r.nullcline_sides[1] == -1;
            jr["area_fraction"] = r.area_fraction;
            jr["representative"] = {r.representative.x, r.representative.y};
            jr["adjacent"] = r.adjacency;
            jr["consistent"] = r.signs_consistent;
            regions.push_back(jr);
        }
    }
    rep["regions"] = regions;

    json inv = json::array();
    if (an.monotone) {
        for (std::size_t i = 0; i < an.verdicts.size(); ++i) {
            const auto& v = an.verdicts[i];
            const auto& r = an.monotone->regions[i];
            json jv;
            jv["region_id"] = v.region_id;
            jv["representative"] = {r.representative.x, r.representative.y};
            json sides;
            for (std::size_t s = 0; s < r.nullcline_sides.size(); ++s) {
                sides[an.monotone->nullcline_labels[s]] = r.nullcline_sides[s];
            }
            jv["sides"] = sides;
            jv["between_nullclines"] =
                r.nullcline_sides.size() == 2 &&
                r.nullcline_sides[0] * r.nullcline_sides[1] == -1;
            jv["verdict"] = to_string(v.kind);
            if (v.kind != VerdictKind::ProvenBySigns) {
                jv["samples"] = v.samples;
                jv["steps"] = v.steps;
            }
            if (v.kind == VerdictKind::Counterexample) {
                jv["counterexample"] = {v.counterexample.x, v.counterexample.y};
                jv["exit_step"] = v.exit_step;
            }
            inv.push_back(jv);
        }
    }
    rep["invariance"] = inv;

    json risk = json::array();
    for (const auto& [a, b] : an.risk) risk.push_back({a, b});
    rep["oscillation_risk"] = risk;

    if (cfg.orbits) {
        OutcomeOptions opts;
        opts.n_orbits = cfg.orbits->n;
        opts.max_steps = cfg.orbits->steps;
        opts.tol = cfg.orbits->tol;
        opts.seed = cfg.seed;
        opts.start_box = cfg.window();
        ConvergenceStats stats;
        if (an.map.family == Family::Competition) {
            stats = verify_global_outcome(std::get<CompetitionParams>(an.map.params), opts);
        } else {
            CasePrediction pred;
            int n_int = 0;
            for (const auto& e : an.eqs.isolated) {
                if (e.kind == EquilibriumKind::Interior) ++n_int;
            }
            int seen = 0;
            for (const auto& e : an.eqs.isolated) {
                AttractorDesc d;
                d.label = equilibrium_label(
                    e, e.kind == EquilibriumKind::Interior ? seen++ : 0, n_int);
                d.point = e.p;
                pred.attractors.push_back(d);
            }
            stats = run_outcome(an.map, pred, opts);
        }
        json conv;
        conv["n_orbits"] = stats.n_orbits;
        json counts;
        for (const auto& [label, count] : stats.attractor_counts) counts[label] = count;
        conv["counts"] = counts;
        conv["unresolved"] = stats.unresolved;
        conv["max_steps"] = stats.max_steps;
        conv["tol"] = stats.tol;
        if (!stats.diagnostics.empty()) conv["diagnostics"] = stats.diagnostics;
        rep["convergence"] = conv;
    }
    return rep;
}

}  // namespace augmap
