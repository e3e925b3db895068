#include "augmap/svg.hpp"

#include <cmath>
#include <sstream>

#include "augmap/util.hpp"

namespace augmap {

namespace {

constexpr double kWidth = 860, kHeight = 860;
constexpr double kLeft = 70, kRight = 30, kTop = 30, kBottom = 60;

struct Mapper {
    Box world;

    double sx(double x) const {
        return kLeft + (x - world.xmin) / world.width() * (kWidth - kLeft - kRight);
    }
    double sy(double y) const {
        return kHeight - kBottom -
               (y - world.ymin) / world.height() * (kHeight - kTop - kBottom);
    }
};

void path_from_points(std::ostringstream& out, const Mapper& mp,
                      const std::vector<Point>& pts, const char* color,
                      bool dashed, double width) {
    if (pts.size() < 2) return;
    out << "<path d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out << (i == 0 ? "M" : "L") << format_double(mp.sx(pts[i].x)) << ' '
            << format_double(mp.sy(pts[i].y));
    }
    out << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
        << format_double(width) << "\"";
    if (dashed) out << " stroke-dasharray=\"7 5\"";
    out << "/>\n";
}

// samples an explicit nullcline over the window, splitting where it leaves it
void draw_explicit_curve(std::ostringstream& out, const Mapper& mp,
                         const NullclineCurve& nc, const Box& win,
                         const char* color, bool dashed) {
    const int n = 256;
    std::vector<Point> run;
    const bool in_x = nc.orientation == Orientation::ExplicitInX;
    const double lo = in_x ? win.xmin : win.ymin;
    const double hi = in_x ? win.xmax : win.ymax;
    for (int i = 0; i <= n; ++i) {
        const double t = lo + (hi - lo) * i / n;
        const double v = nc.eval(t);
        const Point p = in_x ? Point{t, v} : Point{v, t};
        if (std::isfinite(v) && win.contains(p)) {
            run.push_back(p);
        } else {
            path_from_points(out, mp, run, color, dashed, 2.0);
            run.clear();
        }
    }
    path_from_points(out, mp, run, color, dashed, 2.0);
}

void draw_branch(std::ostringstream& out, const Mapper& mp,
                 const RootCurveBranch& br, const Box& win, const char* color) {
    const int n = 512;
    const bool in_x = br.orientation == Orientation::ExplicitInX;
    const double lo = in_x ? win.xmin : win.ymin;
    const double hi = in_x ? win.xmax : win.ymax;
    std::vector<Point> run;
    for (int i = 0; i <= n; ++i) {
        const double t = lo + (hi - lo) * i / n;
        const BranchValue v = br.eval(t);
        const Point p = in_x ? Point{t, v.value} : Point{v.value, t};
        if (v.ok && win.contains(p)) {
            run.push_back(p);
        } else {
            path_from_points(out, mp, run, color, false, 2.0);
            run.clear();
        }
    }
    path_from_points(out, mp, run, color, false, 2.0);
}

void draw_star(std::ostringstream& out, double cx, double cy, const char* color) {
    const double r = 7.0;
    const double diag = r * 0.7071;
    auto seg = [&](double x1, double y1, double x2, double y2) {
        out << "<line x1=\"" << format_double(x1) << "\" y1=\"" << format_double(y1)
            << "\" x2=\"" << format_double(x2) << "\" y2=\"" << format_double(y2)
            << "\" stroke=\"" << color << "\" stroke-width=\"1.6\"/>\n";
    };
    seg(cx - r, cy, cx + r, cy);
    seg(cx, cy - r, cx, cy + r);
    seg(cx - diag, cy - diag, cx + diag, cy + diag);
    seg(cx - diag, cy + diag, cx + diag, cy - diag);
}

}  // namespace

std::string render_portrait(const Config& cfg, const std::vector<OrbitSpec>& orbits) {
    const Analysis an = analyze_map(cfg);
    const Box win = cfg.window();
    const Mapper mp{win};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<defs><clipPath id=\"plot\"><rect x=\"" << kLeft << "\" y=\"" << kTop
        << "\" width=\"" << (kWidth - kLeft - kRight) << "\" height=\""
        << (kHeight - kTop - kBottom) << "\"/></clipPath></defs>\n";

    // frame and tick labels
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
        << (kWidth - kLeft - kRight) << "\" height=\"" << (kHeight - kTop - kBottom)
        << "\" fill=\"none\" stroke=\"#222\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = win.xmin + win.width() * i / 4;
        const double y = win.ymin + win.height() * i / 4;
        out << "<text x=\"" << format_double(mp.sx(x)) << "\" y=\""
            << (kHeight - kBottom + 20)
            << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">"
            << format_double(x) << "</text>\n";
        out << "<text x=\"" << (kLeft - 8) << "\" y=\""
            << format_double(mp.sy(y) + 4)
            << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">"
            << format_double(y) << "</text>\n";
    }

    // direction field on a coarse sub-grid
    out << "<g id=\"direction-field\">\n";
    const int narrow = 13;
    for (int j = 0; j < narrow; ++j) {
        for (int i = 0; i < narrow; ++i) {
            const Point p{win.xmin + (i + 0.5) * win.width() / narrow,
                          win.ymin + (j + 0.5) * win.height() / narrow};
            const DirectionSigns ds = direction_signs(cfg.map, p, 1e-9);
            const double ux = ds.dx == Sign::Plus ? 1 : ds.dx == Sign::Minus ? -1 : 0;
            const double uy = ds.dy == Sign::Plus ? 1 : ds.dy == Sign::Minus ? -1 : 0;
            if (ux == 0 && uy == 0) continue;
            const double len = 9.0;
            const double x0 = mp.sx(p.x), y0 = mp.sy(p.y);
            const double x1 = x0 + ux * len, y1 = y0 - uy * len;
            out << "<line x1=\"" << format_double(x0) << "\" y1=\""
                << format_double(y0) << "\" x2=\"" << format_double(x1)
                << "\" y2=\"" << format_double(y1)
                << "\" stroke=\"#555\" stroke-width=\"1\"/>\n";
            // arrowhead: two short back-strokes
            const double bx = (x0 - x1) * 0.35, by = (y0 - y1) * 0.35;
            const double px = -(y0 - y1) * 0.2, py = (x0 - x1) * 0.2;
            out << "<line x1=\"" << format_double(x1) << "\" y1=\""
                << format_double(y1) << "\" x2=\"" << format_double(x1 + bx + px)
                << "\" y2=\"" << format_double(y1 + by + py)
                << "\" stroke=\"#555\" stroke-width=\"1\"/>\n";
            out << "<line x1=\"" << format_double(x1) << "\" y1=\""
                << format_double(y1) << "\" x2=\"" << format_double(x1 + bx - px)
                << "\" y2=\"" << format_double(y1 + by - py)
                << "\" stroke=\"#555\" stroke-width=\"1\"/>\n";
        }
    }
    out << "</g>\n";

    // nullclines (dashed; black for the X-equation, gray for the Y-equation)
    out << "<g id=\"nullclines\" clip-path=\"url(#plot)\">\n";
    if (cfg.map.family == Family::Generic) {
        for (const auto& pl : an.traced_x_nullclines) {
            path_from_points(out, mp, pl.pts, "black", true, 2.0);
        }
        for (const auto& pl : an.traced_y_nullclines) {
            path_from_points(out, mp, pl.pts, "gray", true, 2.0);
        }
    } else {
        for (const auto& nc : an.nullclines) {
            const char* color =
                nc.annihilates == Annihilates::XEquation ? "black" : "gray";
            draw_explicit_curve(out, mp, nc, win, color, true);
        }
    }
    out << "</g>\n";

    // root-curves (solid, matching colors)
    out << "<g id=\"root-curves\" clip-path=\"url(#plot)\">\n";
    if (cfg.map.family == Family::Competition) {
        const auto& p = std::get<CompetitionParams>(cfg.map.params);
        for (const auto& br : closed_form_root_curves(p, win)) {
            if (!br.in_window) continue;
            draw_branch(out, mp, br, win, br.nullcline_label == "h" ? "black" : "gray");
        }
    } else if (!an.nullclines.empty()) {
        TraceConfig tc;
        tc.bbox = win;
        tc.grid_nx = cfg.grid_nx;
        tc.grid_ny = cfg.grid_ny;
        for (const auto& nc : an.nullclines) {
            const NextIterateOperator op = next_iterate_operator(cfg.map, nc);
            const char* color =
                nc.annihilates == Annihilates::XEquation ? "black" : "gray";
            const auto traced = trace_zero_set(
                [&op](double x, double y) { return op(Point{x, y}); }, tc);
            for (const auto& pl : traced.curves) {
                path_from_points(out, mp, pl.pts, color, false, 2.0);
            }
        }
    }
    out << "</g>\n";

    // operator signs per region, colored like their curves
    out << "<g id=\"op-signs\" font-family=\"monospace\" font-size=\"17\">\n";
    if (an.full) {
        for (const auto& r : an.full->regions) {
            if (!r.signs_consistent || r.area_fraction < 0.001) continue;
            const double x = mp.sx(r.representative.x);
            const double y = mp.sy(r.representative.y);
            double dxoff = -10;
            for (const auto& [label, s] : r.op_signs) {
                const char* color = label == "h" ? "black" : "gray";
                out << "<text x=\"" << format_double(x + dxoff) << "\" y=\""
                    << format_double(y) << "\" fill=\"" << color << "\">"
                    << (s == Sign::Plus ? "+" : s == Sign::Minus ? "-" : "0")
                    << "</text>\n";
                dxoff += 14;
            }
        }
    }
    out << "</g>\n";

    // equilibria as labeled dots; an equilibrium segment as a thick line
    out << "<g id=\"equilibria\" font-family=\"monospace\" font-size=\"13\">\n";
    int interior_count = 0;
    for (const auto& e : an.eqs.isolated) {
        if (e.kind == EquilibriumKind::Interior) ++interior_count;
    }
    int seen = 0;
    for (const auto& e : an.eqs.isolated) {
        if (!win.contains(e.p)) continue;
        const double x = mp.sx(e.p.x), y = mp.sy(e.p.y);
        out << "<circle cx=\"" << format_double(x) << "\" cy=\"" << format_double(y)
            << "\" r=\"4.5\" fill=\"black\" stroke=\"white\" stroke-width=\"1.2\"/>\n";
        std::string label;
        switch (e.kind) {
            case EquilibriumKind::Origin: label = "E0"; break;
            case EquilibriumKind::BoundaryX: label = "E1"; break;
            case EquilibriumKind::BoundaryY: label = "E2"; break;
            case EquilibriumKind::Interior:
                label = interior_count > 1 ? "E*_" + std::to_string(++seen) : "E*";
                break;
        }
        out << "<text x=\"" << format_double(x + 7) << "\" y=\""
            << format_double(y - 7) << "\">" << label << "</text>\n";
    }
    if (an.eqs.continuum) {
        out << "<line x1=\"" << format_double(mp.sx(an.eqs.continuum->a.x))
            << "\" y1=\"" << format_double(mp.sy(an.eqs.continuum->a.y))
            << "\" x2=\"" << format_double(mp.sx(an.eqs.continuum->b.x))
            << "\" y2=\"" << format_double(mp.sy(an.eqs.continuum->b.y))
            << "\" stroke=\"black\" stroke-width=\"4\" opacity=\"0.5\"/>\n";
    }
    out << "</g>\n";

    // sample orbits: polyline, dots on iterates, star on the start
    out << "<g id=\"orbits\" clip-path=\"url(#plot)\">\n";
    for (const auto& spec : orbits) {
        const OrbitResult orb = orbit(cfg.map, spec.start, spec.steps);
        std::vector<Point> inside;
        for (const Point& q : orb.points) {
            if (win.contains(q)) inside.push_back(q);
        }
        path_from_points(out, mp, orb.points, "royalblue", false, 1.5);
        for (const Point& q : inside) {
            out << "<circle cx=\"" << format_double(mp.sx(q.x)) << "\" cy=\""
                << format_double(mp.sy(q.y))
                << "\" r=\"2.2\" fill=\"royalblue\"/>\n";
        }
        draw_star(out, mp.sx(spec.start.x), mp.sy(spec.start.y), "royalblue");
    }
    out << "</g>\n";

    out << "</svg>\n";
    return out.str();
}

}  // namespace augmap
