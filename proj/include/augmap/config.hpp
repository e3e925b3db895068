#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "augmap/models.hpp"

namespace augmap {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OrbitRunOptions {
    long n = 1000;
    long steps = 10000;
    double tol = 1e-6;
};

struct Config {
    std::string model;
    PlanarMap map;
    std::optional<Box> bbox;  // window override
    int grid_nx = 512;
    int grid_ny = 512;
    std::uint64_t seed = 1;
    std::optional<OrbitRunOptions> orbits;
    nlohmann::ordered_json params_echo;  // parameters as given, for reports

    Box window() const { return bbox.value_or(map.domain); }
};

/// Parses a config file:
///   { "model": "competition" | "ricker" | "mutualism" | "predprey" | "generic",
///     "params": {...},            // family parameters / generic constants
///     "F": "...", "G": "...",     // generic only: expressions in X, Y
///     "bbox": [xmin, ymin, xmax, ymax],
///     "grid": [nx, ny],
///     "seed": 1,
///     "orbits": {"n": 1000, "steps": 10000, "tol": 1e-6} }
/// The AUGMAP_SEED environment variable overrides the config seed.
/// Throws ConfigError with parse/validation diagnostics.
Config load_config(const std::string& path);

Config parse_config(const std::string& json_text, const std::string& origin);

}  // namespace augmap
