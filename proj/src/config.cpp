#include "dicke/config.hpp"

#include <cmath>
#include <set>

#include "json.hpp"

namespace dicke {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& scope) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            const std::string key = scope.empty() ? item.key() : scope + "." + item.key();
            throw ConfigError(key, "unknown configuration key '" + key + "'");
        }
    }
}

double get_number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(key, "expected a number for '" + key + "'");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(key, "expected an integer for '" + key + "'");
    return v.get<int>();
}

bool get_bool(const json& obj, const std::string& key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError(key, "expected a boolean for '" + key + "'");
    return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(key, "expected a string for '" + key + "'");
    return v.get<std::string>();
}

PulseSchedule parse_pulse(const json& obj) {
    reject_unknown_keys(obj, {"kind", "duration", "delta", "delta_start", "delta_end"}, "pulse");
    const std::string kind = get_string(obj, "kind", "square");
    const double duration = get_number(obj, "duration", 0.0);
    if (kind == "square") {
        return PulseSchedule::square(get_number(obj, "delta", 0.0), duration);
    }
    if (kind == "linear_chirp") {
        return PulseSchedule::linear_chirp(get_number(obj, "delta_start", 0.0),
                                           get_number(obj, "delta_end", 0.0), duration);
    }
    throw ConfigError("pulse.kind", "unknown pulse kind '" + kind + "'");
}

json pulse_to_json(const PulseSchedule& pulse) {
    json obj;
    obj["duration"] = pulse.duration;
    if (pulse.kind == PulseKind::Square) {
        obj["kind"] = "square";
        obj["delta"] = pulse.delta_constant;
    } else {
        obj["kind"] = "linear_chirp";
        obj["delta_start"] = pulse.delta_start;
        obj["delta_end"] = pulse.delta_end;
    }
    return obj;
}

}  // namespace

RunConfig preset(const std::string& name) {
    if (name == "default") {
        RunConfig config;
        config.scenario = "d31";
        config.scenario_config.params = default_params();
        return config;
    }
    throw ConfigError("preset", "unknown preset '" + name + "'");
}

RunConfig parse_config_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError("config", std::string("config is not valid JSON: ") + err.what());
    }
    if (!root.is_object()) throw ConfigError("config", "config root must be an object");
    reject_unknown_keys(root,
                        {"scenario", "output_dir", "params", "integrator", "pulse",
                         "scenario_options", "sweep"},
                        "");

    RunConfig config;
    config.scenario = get_string(root, "scenario", "d31");
    config.output_dir = get_string(root, "output_dir", "out");

    if (root.contains("params")) {
        const json& obj = root.at("params");
        reject_unknown_keys(obj,
                            {"n_spins", "nu", "lambda", "coupling_error", "quality_factor",
                             "temperature"},
                            "params");
        PhysicalParams& p = config.scenario_config.params;
        p.n_spins = get_int(obj, "n_spins", p.n_spins);
        p.nu = get_number(obj, "nu", p.nu);
        p.lambda_base = get_number(obj, "lambda", p.lambda_base);
        p.coupling_error = get_number(obj, "coupling_error", p.coupling_error);
        p.quality_factor = get_number(obj, "quality_factor", p.quality_factor);
        p.temperature = get_number(obj, "temperature", p.temperature);
    }
    if (root.contains("integrator")) {
        const json& obj = root.at("integrator");
        reject_unknown_keys(obj, {"max_step", "relative_tolerance", "norm_guard", "sample_stride"},
                            "integrator");
        PropagatorConfig& i = config.scenario_config.integrator;
        i.max_step = get_number(obj, "max_step", i.max_step);
        i.relative_tolerance = get_number(obj, "relative_tolerance", i.relative_tolerance);
        i.norm_guard = get_number(obj, "norm_guard", i.norm_guard);
        i.sample_stride = get_int(obj, "sample_stride", i.sample_stride);
    }
    if (root.contains("pulse") && !root.at("pulse").is_null()) {
        config.scenario_config.pulse = parse_pulse(root.at("pulse"));
    }
    if (root.contains("scenario_options")) {
        const json& obj = root.at("scenario_options");
        reject_unknown_keys(
            obj, {"excitations", "adiabatic_threshold", "fock_headroom", "full_space_check"},
            "scenario_options");
        ScenarioConfig& s = config.scenario_config;
        s.excitations = get_int(obj, "excitations", s.excitations);
        s.adiabatic_threshold = get_number(obj, "adiabatic_threshold", s.adiabatic_threshold);
        s.fock_headroom = get_int(obj, "fock_headroom", s.fock_headroom);
        s.full_space_check = get_bool(obj, "full_space_check", s.full_space_check);
    }
    if (root.contains("sweep") && !root.at("sweep").is_null()) {
        const json& obj = root.at("sweep");
        reject_unknown_keys(obj, {"parameter", "values"}, "sweep");
        SweepSpec spec;
        spec.parameter = get_string(obj, "parameter", "");
        if (obj.contains("values")) {
            const json& vals = obj.at("values");
            if (!vals.is_array()) throw ConfigError("sweep.values", "expected an array");
            for (const json& v : vals) {
                if (v.is_string()) {
                    spec.values.push_back(std::stod(v.get<std::string>()));
                } else if (v.is_number()) {
                    spec.values.push_back(v.get<double>());
                } else {
                    throw ConfigError("sweep.values", "expected numbers");
                }
            }
        }
        config.sweep = std::move(spec);
    }

    validate(config.scenario_config.params);
    validate(config.scenario_config.integrator);
    if (config.scenario_config.excitations < 0) {
        throw ConfigError("excitations", "excitations must be non-negative");
    }
    if (config.scenario_config.fock_headroom < 1) {
        throw ConfigError("fock_headroom", "fock_headroom must be at least 1");
    }
    return config;
}

std::string to_config_json(const RunConfig& config) {
    json root;
    root["scenario"] = config.scenario;
    root["output_dir"] = config.output_dir;
    const PhysicalParams& p = config.scenario_config.params;
    root["params"] = {{"n_spins", p.n_spins},
                      {"nu", p.nu},
                      {"lambda", p.lambda_base},
                      {"coupling_error", p.coupling_error},
                      {"quality_factor", p.quality_factor},
                      {"temperature", p.temperature}};
    const PropagatorConfig& i = config.scenario_config.integrator;
    root["integrator"] = {{"max_step", i.max_step},
                          {"relative_tolerance", i.relative_tolerance},
                          {"norm_guard", i.norm_guard},
                          {"sample_stride", i.sample_stride}};
    const ScenarioConfig& s = config.scenario_config;
    root["scenario_options"] = {{"excitations", s.excitations},
                                {"adiabatic_threshold", s.adiabatic_threshold},
                                {"fock_headroom", s.fock_headroom},
                                {"full_space_check", s.full_space_check}};
    if (s.pulse) {
        root["pulse"] = pulse_to_json(*s.pulse);
    } else {
        root["pulse"] = nullptr;
    }
    if (config.sweep) {
        root["sweep"] = {{"parameter", config.sweep->parameter}, {"values", config.sweep->values}};
    } else {
        root["sweep"] = nullptr;
    }
    return root.dump(2) + "\n";
}

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) throw ConfigError("grid", "empty grid specification");
    std::vector<double> values;
    const auto to_double = [](const std::string& token) {
        try {
            size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("grid", "cannot parse grid token '" + token + "'");
        }
    };
    if (spec.find(':') != std::string::npos) {
        // start:stop:count
        const size_t c1 = spec.find(':');
        const size_t c2 = spec.find(':', c1 + 1);
        if (c2 == std::string::npos) throw ConfigError("grid", "range grid needs start:stop:count");
        const double start = to_double(spec.substr(0, c1));
        const double stop = to_double(spec.substr(c1 + 1, c2 - c1 - 1));
        const int count = static_cast<int>(to_double(spec.substr(c2 + 1)));
        if (count < 2) throw ConfigError("grid", "range grid needs at least 2 points");
        for (int k = 0; k < count; ++k) {
            values.push_back(start + (stop - start) * double(k) / double(count - 1));
        }
        return values;
    }
    size_t begin = 0;
    while (begin <= spec.size()) {
        const size_t end = spec.find(',', begin);
        const std::string token =
            spec.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
        if (!token.empty()) values.push_back(to_double(token));
        if (end == std::string::npos) break;
        begin = end + 1;
    }
    if (values.empty()) throw ConfigError("grid", "empty grid specification");
    return values;
}

}  // namespace dicke
