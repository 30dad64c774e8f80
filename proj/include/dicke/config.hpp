// config.hpp — run configuration, presets, strict JSON parsing and echo
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dicke/experiments.hpp"

namespace dicke {

struct SweepSpec {
    std::string parameter;  // "coupling_error" or "quality_factor"
    std::vector<double> values;
};

struct RunConfig {
    std::string scenario;  // d31, d32-resonant, d32-adiabatic, tune-chirp, rwa, coupling, heating
    ScenarioConfig scenario_config;
    std::optional<SweepSpec> sweep;
    std::string output_dir = "out";
};

// Named built-in configurations; "default" is the reference setup (three NV
// spins, nu = 14.87e6 rad/s, lambda = 0.96e6 rad/s, T = 114 uK, Q = 1e5).
RunConfig preset(const std::string& name);

// Strict parser: unknown keys are rejected with the offending key name; all
// physical values are validated before any computation starts.
RunConfig parse_config_json(const std::string& text);

// Fully resolved echo; parsing it again reproduces the configuration exactly.
std::string to_config_json(const RunConfig& config);

// "a,b,c" (comma list) or "start:stop:count" (inclusive linear grid).
// "inf" parses as +infinity.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace dicke
