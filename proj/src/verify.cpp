#include "augmap/verify.hpp"

#include <cmath>
#include <sstream>

#include "augmap/report.hpp"

namespace augmap {

namespace {

using json = nlohmann::ordered_json;

struct Collector {
    json checks = json::array();
    std::ostringstream summary;
    bool all_pass = true;

    void add(const std::string& name, bool pass, const std::string& detail,
             json data = json::object()) {
        json c;
        c["name"] = name;
        c["pass"] = pass;
        c["detail"] = detail;
        if (!data.empty()) c["data"] = std::move(data);
        checks.push_back(std::move(c));
        summary << (pass ? "[ ok ] " : "[FAIL] ") << name << ": " << detail << '\n';
        if (!pass) all_pass = false;
    }

    void info(const std::string& name, const std::string& detail,
              json data = json::object()) {
        json c;
        c["name"] = name;
        c["pass"] = true;
        c["informational"] = true;
        c["detail"] = detail;
        if (!data.empty()) c["data"] = std::move(data);
        checks.push_back(std::move(c));
        summary << "[info] " << name << ": " << detail << '\n';
    }
};

OutcomeOptions outcome_options(const Config& cfg) {
    OutcomeOptions opts;
    if (cfg.orbits) {
        opts.n_orbits = cfg.orbits->n;
        opts.max_steps = cfg.orbits->steps;
        opts.tol = cfg.orbits->tol;
    }
    opts.seed = cfg.seed;
    if (cfg.bbox) opts.start_box = cfg.bbox;
    return opts;
}

std::string counts_string(const ConvergenceStats& stats) {
    std::ostringstream ss;
    bool first = true;
    for (const auto& [label, count] : stats.attractor_counts) {
        if (count == 0) continue;
        if (!first) ss << ", ";
        ss << count << "/" << stats.n_orbits << " -> " << label;
        first = false;
    }
    if (stats.unresolved > 0) ss << ", " << stats.unresolved << " unresolved";
    if (first && stats.unresolved == 0) ss << "no orbits";
    return ss.str();
}

json counts_json(const ConvergenceStats& stats) {
    json data;
    data["n_orbits"] = stats.n_orbits;
    json counts;
    for (const auto& [label, count] : stats.attractor_counts) counts[label] = count;
    data["counts"] = counts;
    data["unresolved"] = stats.unresolved;
    data["max_steps"] = stats.max_steps;
    data["tol"] = stats.tol;
    return data;
}

// Zeros of each operator along its own nullcline must reproduce exactly the
// equilibria sitting on that nullcline.
void check_rootset_zeros(Collector& col, const Config& cfg) {
    const auto& p = std::get<CompetitionParams>(cfg.map.params);
    const PlanarMap map = cfg.map;
    auto [hc, kc] = competition_nullclines(p);
    const EquilibriumSet eqs = equilibria(map);
    const Box win = cfg.map.domain;

    for (const NullclineCurve& nc : {hc, kc}) {
        const NextIterateOperator op = next_iterate_operator(map, nc);
        const RootNullclineScan scan =
            root_set_nullcline_intersections(map, nc, op, win);

        if (scan.identically_zero) {
            const bool degenerate = competition_degenerate(p);
            col.add("rootset_zeros_" + nc.label, degenerate,
                    degenerate
                        ? "operator vanishes along the whole nullcline (coincident case)"
                        : "operator unexpectedly vanishes along the nullcline");
            continue;
        }

        std::vector<Point> expected;
        for (const auto& e : eqs.isolated) {
            const double resid = nc.orientation == Orientation::ExplicitInX
                                     ? std::abs(e.p.y - nc.eval(e.p.x))
                                     : std::abs(e.p.x - nc.eval(e.p.y));
            const double coord = nc.orientation == Orientation::ExplicitInX
                                     ? e.p.x
                                     : e.p.y;
            if (resid < 1e-9 && coord >= nc.dom_lo - 1e-9 &&
                coord <= nc.dom_hi + 1e-9) {
                expected.push_back(e.p);
            }
        }

        bool pass = scan.zeros.size() == expected.size();
        double worst = 0.0;
        for (const Point& z : scan.zeros) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& e : expected) best = std::min(best, dist_inf(z, e));
            worst = std::max(worst, best);
        }
        pass = pass && worst < 1e-8;
        std::ostringstream detail;
        detail << scan.zeros.size() << " zero(s) on " << nc.label << ", "
               << expected.size() << " equilibria expected, max mismatch "
               << worst;
        json data;
        data["zeros"] = json::array();
        for (const Point& z : scan.zeros) data["zeros"].push_back({z.x, z.y});
        col.add("rootset_zeros_" + nc.label, pass, detail.str(), data);
    }
}

void verify_competition(Collector& col, const Config& cfg) {
    const auto& p = std::get<CompetitionParams>(cfg.map.params);
    const CasePrediction pred = classify(p);
    const EfficiencyPair eff = efficiencies(p);

    {
        std::ostringstream ss;
        ss << "case " << to_string(pred.cse) << " (C12=" << eff.c12
           << ", C21=" << eff.c21 << ")";
        json data;
        data["case"] = to_string(pred.cse);
        data["c12"] = eff.c12;
        data["c21"] = eff.c21;
        col.info("classification", ss.str(), data);
    }

    {
        const SignLemmaReport rep = verify_sign_lemmas(p, 200);
        std::ostringstream ss;
        ss << rep.violations.size() << " violation(s) over " << rep.points_checked
           << " grid points";
        json data;
        data["points_checked"] = rep.points_checked;
        data["violations"] = rep.violations.size();
        col.add("sign_lemmas", rep.violations.empty(), ss.str(), data);
    }

    check_rootset_zeros(col, cfg);

    {
        const ConvergenceStats stats = verify_global_outcome(p, outcome_options(cfg));
        bool pass = stats.unresolved == 0;
        long total = 0;
        for (const auto& [label, count] : stats.attractor_counts) total += count;
        pass = pass && (total == stats.n_orbits);
        if (pred.cse == CompetitionCase::Bistable) {
            long e1 = 0, e2 = 0;
            for (const auto& [label, count] : stats.attractor_counts) {
                if (label == "E1") e1 = count;
                if (label == "E2") e2 = count;
            }
            pass = pass && e1 > 0 && e2 > 0;
        }
        col.add("global_outcome", pass, counts_string(stats), counts_json(stats));
    }

    if (pred.cse == CompetitionCase::Bistable ||
        pred.cse == CompetitionCase::Coexistence) {
        const BoxLemmaResult box = box_lemma_check(p, 100000, cfg.seed);
        std::ostringstream ss;
        ss << box.violations << " transition(s) into the far corner region over "
           << box.sampled << " samples";
        json data;
        data["sampled"] = box.sampled;
        data["violations"] = box.violations;
        col.add("box_transition_exclusion", box.ok, ss.str(), data);
    }

    if (pred.cse == CompetitionCase::DegenerateLine) {
        const Case1Demo demo = case1_stability_demo(p);
        bool eigs_ok = true;
        for (const auto& e : demo.eigs) {
            if (std::abs(e.lambda1 - 1.0) > 1e-9) eigs_ok = false;
        }
        std::ostringstream ss;
        ss << "unit eigenvalue along segment: " << (eigs_ok ? "yes" : "no")
           << "; rectangle exits: " << demo.exits
           << "; max limit distance to segment: " << demo.max_limit_to_segment;
        json data;
        data["exits"] = demo.exits;
        data["starts"] = demo.starts;
        data["max_limit_to_segment"] = demo.max_limit_to_segment;
        col.add("degenerate_line_demo",
                eigs_ok && demo.rectangle_invariant &&
                    demo.max_limit_to_segment < 1e-6,
                ss.str(), data);
    }
}

void verify_ricker(Collector& col, const Config& cfg) {
    const Analysis an = analyze_map(cfg);
    const Box win = cfg.window();

    for (const auto& e : an.eqs.isolated) {
        if (e.kind != EquilibriumKind::Interior) continue;
        const Eig2 ev = eig2(jacobian_at(cfg.map, e.p));
        std::ostringstream ss;
        ss << "coexistence equilibrium (" << e.p.x << ", " << e.p.y
           << "), eigenvalue moduli " << std::abs(ev.l1) << ", " << std::abs(ev.l2);
        json data;
        data["point"] = {e.p.x, e.p.y};
        data["moduli"] = {std::abs(ev.l1), std::abs(ev.l2)};
        data["locally_stable"] = std::abs(ev.l1) < 1.0 && std::abs(ev.l2) < 1.0;
        col.info("coexistence_spectrum", ss.str(), data);
    }

    {
        const auto jump = find_double_nullcline_jump(cfg.map, an.nullclines, win);
        const auto exit = find_exit_from_below_region(cfg.map, an.nullclines, win);
        json data;
        data["double_jump_start"] =
            jump ? json{jump->x, jump->y} : json(nullptr);
        data["below_region_exit_start"] =
            exit ? json{exit->x, exit->y} : json(nullptr);
        std::ostringstream ss;
        ss << "double nullcline jump " << (jump ? "found" : "not found")
           << "; exit from the region below both nullclines "
           << (exit ? "found" : "not found");
        col.info("jump_scan", ss.str(), data);
    }

    {
        long proven = 0, empirical = 0, refuted = 0;
        json verdicts = json::array();
        for (std::size_t i = 0; i < an.verdicts.size(); ++i) {
            const auto& v = an.verdicts[i];
            switch (v.kind) {
                case VerdictKind::ProvenBySigns: ++proven; break;
                case VerdictKind::EmpiricallySupported: ++empirical; break;
                case VerdictKind::Counterexample: ++refuted; break;
            }
            json jv;
            jv["region_id"] = v.region_id;
            jv["verdict"] = to_string(v.kind);
            const auto& r = an.monotone->regions[i];
            jv["representative"] = {r.representative.x, r.representative.y};
            jv["between_nullclines"] =
                r.nullcline_sides.size() == 2 &&
                r.nullcline_sides[0] * r.nullcline_sides[1] == -1;
            verdicts.push_back(jv);
        }
        std::ostringstream ss;
        ss << proven << " proven, " << empirical << " empirical, " << refuted
           << " refuted region(s)";
        json data;
        data["verdicts"] = verdicts;
        col.info("invariance", ss.str(), data);
    }

    {
        json pairs = json::array();
        for (const auto& [a, b] : an.risk) pairs.push_back({a, b});
        std::ostringstream ss;
        ss << an.risk.size() << " oscillation-risk pair(s)";
        json data;
        data["pairs"] = pairs;
        col.info("oscillation_risk", ss.str(), data);
    }

    if (cfg.orbits) {
        CasePrediction pred;
        for (const auto& e : an.eqs.isolated) {
            AttractorDesc d;
            d.label = e.kind == EquilibriumKind::Origin      ? "E0"
                      : e.kind == EquilibriumKind::BoundaryX ? "E1"
                      : e.kind == EquilibriumKind::BoundaryY ? "E2"
                                                             : "E*";
            d.point = e.p;
            pred.attractors.push_back(d);
        }
        const ConvergenceStats stats = run_outcome(cfg.map, pred, outcome_options(cfg));
        col.add("orbit_convergence", stats.unresolved == 0, counts_string(stats),
                counts_json(stats));
    }
}

void verify_mutualism(Collector& col, const Config& cfg) {
    const Analysis an = analyze_map(cfg);

    TraceConfig tc;
    tc.bbox = cfg.window();
    tc.grid_nx = cfg.grid_nx;
    tc.grid_ny = cfg.grid_ny;
    json comp_data;
    std::ostringstream comp_ss;
    for (const auto& nc : an.nullclines) {
        const NextIterateOperator op = next_iterate_operator(cfg.map, nc);
        const TraceResult tr = trace_zero_set(
            [&op](double x, double y) { return op(Point{x, y}); }, tc);
        comp_data["components_" + nc.label] = tr.curves.size();
        comp_ss << tr.curves.size() << " root-curve component(s) for " << nc.label
                << "; ";
    }
    col.info("root_curve_components", comp_ss.str(), comp_data);

    if (cfg.orbits) {
        CasePrediction pred;
        for (const auto& e : an.eqs.isolated) {
            AttractorDesc d;
            d.label = e.kind == EquilibriumKind::Origin      ? "E0"
                      : e.kind == EquilibriumKind::BoundaryX ? "E1"
                      : e.kind == EquilibriumKind::BoundaryY ? "E2"
                                                             : "E*";
            d.point = e.p;
            pred.attractors.push_back(d);
        }
        const ConvergenceStats stats = run_outcome(cfg.map, pred, outcome_options(cfg));
        col.add("orbit_convergence", stats.unresolved == 0, counts_string(stats),
                counts_json(stats));
    }
}

// Newton on (map^iter - id) from low-discrepancy seeds; any interior root
// must coincide with a fixed point of the map itself.
void periodic_point_search(Collector& col, const Config& cfg, int iterate) {
    const PlanarMap& map = cfg.map;
    const Box box = cfg.window();

    PlanarField f = [&map, iterate](const Point& q) {
        Point s = q;
        for (int i = 0; i < iterate; ++i) s = step(map, s);
        return std::array<double, 2>{s.x - q.x, s.y - q.y};
    };

    R2Sequence seq(cfg.seed);
    const int n_seeds = 10000;
    long found_roots = 0, non_fixed = 0;
    json offenders = json::array();
    for (int s = 0; s < n_seeds; ++s) {
        const Point seed = seq.next_in(box);
        if (seed.x <= 0 || seed.y <= 0) continue;
        const NewtonResult r = newton2(f, nullptr, seed, {1e-11, 60});
        if (!r.converged) continue;
        if (r.root.x < 1e-9 || r.root.y < 1e-9 || !box.contains(r.root)) continue;
        ++found_roots;
        const Point img = step(map, r.root);
        if (dist_inf(img, r.root) > 1e-8) {
            ++non_fixed;
            if (offenders.size() < 10) offenders.push_back({r.root.x, r.root.y});
        }
    }
    std::ostringstream ss;
    ss << "period-" << iterate << " search: " << found_roots
       << " interior root(s), " << non_fixed << " not fixed points";
    json data;
    data["iterate"] = iterate;
    data["roots"] = found_roots;
    data["non_fixed"] = non_fixed;
    if (!offenders.empty()) data["offenders"] = offenders;
    col.add("period_" + std::to_string(iterate) + "_exclusion", non_fixed == 0,
            ss.str(), data);
}

void verify_predprey(Collector& col, const Config& cfg) {
    const auto& p = std::get<PredPreyParams>(cfg.map.params);
    const EquilibriumSet eqs = equilibria(cfg.map);
    const double gK = p.gamma * p.K;

    {
        std::ostringstream ss;
        ss << "gamma*K = " << gK << ", d = " << p.d << " ("
           << (gK < p.d ? "prey-only equilibrium attracts"
                        : gK < 1 + 2 * p.d ? "interior equilibrium locally stable"
                                           : "interior equilibrium unstable")
           << ")";
        json data;
        data["gamma_K"] = gK;
        data["d"] = p.d;
        col.info("regime", ss.str(), data);
    }

    if (gK < p.d) {
        CasePrediction pred;
        AttractorDesc ek;
        ek.label = "E1";
        ek.point = {p.K, 0.0};
        pred.attractors = {ek};
        const ConvergenceStats stats = run_outcome(cfg.map, pred, outcome_options(cfg));
        long to_ek = stats.attractor_counts.empty() ? 0 : stats.attractor_counts[0].second;
        col.add("prey_only_convergence",
                stats.unresolved == 0 && to_ek == stats.n_orbits,
                counts_string(stats), counts_json(stats));
    } else {
        for (const auto& e : eqs.isolated) {
            if (e.kind != EquilibriumKind::Interior) continue;
            const Eig2 ev = eig2(jacobian_at(cfg.map, e.p));
            std::ostringstream ss;
            ss << "interior equilibrium (" << e.p.x << ", " << e.p.y
               << "), eigenvalue moduli " << std::abs(ev.l1) << ", "
               << std::abs(ev.l2);
            json data;
            data["point"] = {e.p.x, e.p.y};
            data["moduli"] = {std::abs(ev.l1), std::abs(ev.l2)};
            col.info("coexistence_spectrum", ss.str(), data);
        }
        periodic_point_search(col, cfg, 2);
        periodic_point_search(col, cfg, 3);
    }
}

void verify_generic(Collector& col, const Config& cfg) {
    const Analysis an = analyze_map(cfg);
    std::ostringstream ss;
    ss << an.eqs.isolated.size() << " equilibria from "
       << an.traced_x_nullclines.size() << " traced X-nullcline and "
       << an.traced_y_nullclines.size() << " traced Y-nullcline component(s)";
    json data;
    json pts = json::array();
    for (const auto& e : an.eqs.isolated) pts.push_back({e.p.x, e.p.y});
    data["equilibria"] = pts;
    col.info("traced_summary", ss.str(), data);
}

}  // namespace

VerifyOutcome run_verify(const Config& cfg) {
    Collector col;
    switch (cfg.map.family) {
        case Family::Competition: verify_competition(col, cfg); break;
        case Family::Ricker: verify_ricker(col, cfg); break;
        case Family::Mutualism: verify_mutualism(col, cfg); break;
        case Family::PredPrey: verify_predprey(col, cfg); break;
        case Family::Generic: verify_generic(col, cfg); break;
    }

    VerifyOutcome out;
    out.report["model"] = cfg.model;
    out.report["params"] = cfg.params_echo;
    out.report["seed"] = cfg.seed;
    out.report["checks"] = col.checks;
    out.report["all_passed"] = col.all_pass;
    out.summary = col.summary.str();
    out.exit_code = col.all_pass ? 0 : 1;
    return out;
}

}  // namespace augmap
