// augmap: augmented phase portraits for planar discrete maps.
//
//   augmap analyze  <cfg> [-o out.json]
//   augmap portrait <cfg> -o out.svg [--orbits x,y,n ...]
//   augmap verify   <cfg> [-o out.json]
//   augmap simulate <cfg> --start x,y --steps n [-o out.csv]

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "augmap/config.hpp"
#include "augmap/report.hpp"
#include "augmap/svg.hpp"
#include "augmap/util.hpp"
#include "augmap/verify.hpp"

namespace {

int write_or_print(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 1;
    }
    out << content;
    return 0;
}

bool parse_orbit_spec(const std::string& text, augmap::OrbitSpec& spec) {
    std::istringstream ss(text);
    char c1 = 0, c2 = 0;
    return static_cast<bool>(ss >> spec.start.x >> c1 >> spec.start.y >> c2 >>
                             spec.steps) &&
           c1 == ',' && c2 == ',';
}

bool parse_point(const std::string& text, augmap::Point& p) {
    std::istringstream ss(text);
    char c = 0;
    return static_cast<bool>(ss >> p.x >> c >> p.y) && c == ',';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"augmented phase portraits for planar discrete maps"};
    app.require_subcommand(1);

    std::string cfg_path, out_path;
    std::vector<std::string> orbit_args;
    std::string start_arg;
    long sim_steps = 100;

    CLI::App* analyze = app.add_subcommand("analyze", "write the analysis report as JSON");
    analyze->add_option("config", cfg_path, "config file")->required();
    analyze->add_option("-o,--output", out_path, "output path (default: stdout)");

    CLI::App* portrait = app.add_subcommand("portrait", "render the augmented phase portrait as SVG");
    portrait->add_option("config", cfg_path, "config file")->required();
    portrait->add_option("-o,--output", out_path, "output SVG path")->required();
    portrait->add_option("--orbits", orbit_args, "orbit overlays as x,y,n");

    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("config", cfg_path, "config file")->required();
    verify->add_option("-o,--output", out_path, "also write the JSON report here");

    CLI::App* simulate = app.add_subcommand("simulate", "iterate the map and write a CSV orbit");
    simulate->add_option("config", cfg_path, "config file")->required();
    simulate->add_option("--start", start_arg, "initial point as x,y")->required();
    simulate->add_option("--steps", sim_steps, "number of iterations")->required();
    simulate->add_option("-o,--output", out_path, "output CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    augmap::Config cfg;
    try {
        cfg = augmap::load_config(cfg_path);
    } catch (const augmap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (analyze->parsed()) {
            return write_or_print(out_path, augmap::analyze(cfg).dump(2) + "\n");
        }

        if (portrait->parsed()) {
            std::vector<augmap::OrbitSpec> orbits;
            for (const std::string& arg : orbit_args) {
                augmap::OrbitSpec spec;
                if (!parse_orbit_spec(arg, spec)) {
                    std::cerr << "error: bad orbit spec '" << arg
                              << "' (expected x,y,n)\n";
                    return 2;
                }
                orbits.push_back(spec);
            }
            return write_or_print(out_path, augmap::render_portrait(cfg, orbits));
        }

        if (verify->parsed()) {
            const augmap::VerifyOutcome out = augmap::run_verify(cfg);
            std::cout << out.summary;
            if (!out_path.empty()) {
                if (write_or_print(out_path, out.report.dump(2) + "\n") != 0) return 1;
            }
            return out.exit_code;
        }

        if (simulate->parsed()) {
            augmap::Point p0;
            if (!parse_point(start_arg, p0)) {
                std::cerr << "error: bad start '" << start_arg << "' (expected x,y)\n";
                return 2;
            }
            const augmap::OrbitResult orb = augmap::orbit(cfg.map, p0, sim_steps);
            const int rc = write_or_print(out_path, augmap::orbit_csv(orb.points));
            if (orb.nonfinite_index) {
                std::cerr << "warning: orbit became non-finite at step "
                          << *orb.nonfinite_index << "; output truncated\n";
            }
            return rc;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
