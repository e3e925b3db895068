#include "augmap/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "augmap/expr.hpp"

namespace augmap {

namespace {

double get_number(const nlohmann::ordered_json& obj, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError("missing parameter '" + key + "'");
    if (!obj[key].is_number()) throw ConfigError("parameter '" + key + "' must be a number");
    return obj[key].get<double>();
}

}  // namespace

Config parse_config(const std::string& json_text, const std::string& origin) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }

    Config cfg;
    try {
        if (!j.contains("model") || !j["model"].is_string()) {
            throw ConfigError("config needs a string field 'model'");
        }
        cfg.model = j["model"].get<std::string>();

        nlohmann::ordered_json params = j.value("params", nlohmann::ordered_json::object());
        cfg.params_echo = params;

        if (cfg.model == "competition") {
            CompetitionParams p{get_number(params, "r1"), get_number(params, "r2"),
                                get_number(params, "K1"), get_number(params, "K2"),
                                get_number(params, "alpha1"), get_number(params, "alpha2")};
            cfg.map = make_competition(p);
        } else if (cfg.model == "ricker") {
            RickerParams p{get_number(params, "K"), get_number(params, "L"),
                           get_number(params, "a"), get_number(params, "b")};
            cfg.map = make_ricker(p);
        } else if (cfg.model == "mutualism") {
            MutualismParams p{get_number(params, "a"), get_number(params, "b"),
                              get_number(params, "A"), get_number(params, "B"),
                              get_number(params, "c"), get_number(params, "d"),
                              get_number(params, "C"), get_number(params, "D")};
            cfg.map = make_mutualism(p);
        } else if (cfg.model == "predprey") {
            PredPreyParams p{get_number(params, "r"), get_number(params, "K"),
                             get_number(params, "alpha"), get_number(params, "gamma"),
                             get_number(params, "d")};
            cfg.map = make_predprey(p);
        } else if (cfg.model == "generic") {
            if (!j.contains("F") || !j.contains("G")) {
                throw ConfigError("generic model needs expression fields 'F' and 'G'");
            }
            if (!j.contains("bbox")) {
                throw ConfigError("generic model needs a 'bbox'");
            }
            std::map<std::string, double> consts;
            for (auto it = params.begin(); it != params.end(); ++it) {
                if (!it.value().is_number()) {
                    throw ConfigError("generic constant '" + it.key() + "' must be a number");
                }
                consts[it.key()] = it.value().get<double>();
            }
            ScalarField F, G;
            try {
                F = compile_expression(j["F"].get<std::string>(), consts);
            } catch (const ExprError& e) {
                throw ConfigError(std::string("in F at position ") +
                                  std::to_string(e.position) + ": " + e.what());
            }
            try {
                G = compile_expression(j["G"].get<std::string>(), consts);
            } catch (const ExprError& e) {
                throw ConfigError(std::string("in G at position ") +
                                  std::to_string(e.position) + ": " + e.what());
            }
            Box domain;  // filled from bbox below
            const auto& bb = j["bbox"];
            if (!bb.is_array() || bb.size() != 4) {
                throw ConfigError("'bbox' must be [xmin, ymin, xmax, ymax]");
            }
            domain = Box{bb[0].get<double>(), bb[1].get<double>(),
                         bb[2].get<double>(), bb[3].get<double>()};
            cfg.map = make_generic(std::move(F), std::move(G), domain);
        } else {
            throw ConfigError("unknown model '" + cfg.model + "'");
        }

        if (j.contains("bbox")) {
            const auto& bb = j["bbox"];
            if (!bb.is_array() || bb.size() != 4) {
                throw ConfigError("'bbox' must be [xmin, ymin, xmax, ymax]");
            }
            Box b{bb[0].get<double>(), bb[1].get<double>(), bb[2].get<double>(),
                  bb[3].get<double>()};
            if (!(b.width() > 0.0) || !(b.height() > 0.0)) {
                throw ConfigError("'bbox' must have positive area");
            }
            cfg.bbox = b;
        }
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            if (!g.is_array() || g.size() != 2) throw ConfigError("'grid' must be [nx, ny]");
            cfg.grid_nx = g[0].get<int>();
            cfg.grid_ny = g[1].get<int>();
            if (cfg.grid_nx < 16 || cfg.grid_ny < 16) {
                throw ConfigError("'grid' counts must be at least 16");
            }
        }
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("orbits")) {
            const auto& o = j["orbits"];
            OrbitRunOptions opts;
            opts.n = o.value("n", opts.n);
            opts.steps = o.value("steps", opts.steps);
            opts.tol = o.value("tol", opts.tol);
            cfg.orbits = opts;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin + ": " + e.what());
    }

    if (const char* env = std::getenv("AUGMAP_SEED")) {
        cfg.seed = std::strtoull(env, nullptr, 10);
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

}  // namespace augmap
