// dickesim — command-line front end: scenario runs, parameter sweeps,
// self-validation, CSV emission.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "dicke/config.hpp"
#include "dicke/report.hpp"

namespace fs = std::filesystem;
using namespace dicke;

namespace {

struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::string> preset_name;
    std::optional<std::string> output_dir;
    std::optional<std::string> echo_path;

    std::optional<int> n_spins;
    std::optional<double> nu, lambda, coupling_error, quality_factor, temperature;
    std::optional<double> max_step, rel_tol, norm_guard;
    std::optional<int> sample_stride;
    std::optional<std::string> pulse_kind;
    std::optional<double> duration, delta_const, delta_start, delta_end;
    std::optional<int> excitations, fock_headroom;
    std::optional<double> adiabatic_threshold;
    bool no_full_space = false;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "configuration file (JSON)");
    cmd->add_option("--preset", o.preset_name, "named preset (default)");
    cmd->add_option("--out", o.output_dir, "output directory");
    cmd->add_option("--echo-config", o.echo_path, "write the resolved configuration here");

    cmd->add_option("--n-spins", o.n_spins, "number of spins");
    cmd->add_option("--nu", o.nu, "boson mode angular frequency [rad/s]");
    cmd->add_option("--lambda", o.lambda, "spin-boson coupling [rad/s]");
    cmd->add_option("--coupling-error", o.coupling_error, "relative coupling droop Delta");
    cmd->add_option("--quality-factor", o.quality_factor, "cantilever quality factor");
    cmd->add_option("--temperature", o.temperature, "mode temperature [K]");

    cmd->add_option("--max-step", o.max_step, "integrator step ceiling [s]");
    cmd->add_option("--rel-tol", o.rel_tol, "refinement acceptance tolerance");
    cmd->add_option("--norm-guard", o.norm_guard, "norm/trace drift guard");
    cmd->add_option("--sample-stride", o.sample_stride, "steps between samples (0 = auto)");

    cmd->add_option("--pulse-kind", o.pulse_kind, "square | linear_chirp");
    cmd->add_option("--duration", o.duration, "pulse duration [s]");
    cmd->add_option("--delta", o.delta_const, "square-pulse detuning [rad/s]");
    cmd->add_option("--delta-start", o.delta_start, "chirp start detuning [rad/s]");
    cmd->add_option("--delta-end", o.delta_end, "chirp end detuning [rad/s]");

    cmd->add_option("--excitations", o.excitations, "target excitation count m");
    cmd->add_option("--fock-headroom", o.fock_headroom, "Fock levels above m");
    cmd->add_option("--adiabatic-threshold", o.adiabatic_threshold, "metric warning threshold");
    cmd->add_flag("--no-full-space-check", o.no_full_space, "skip the full-space cross run");
}

RunConfig resolve_config(const Overrides& o, const std::string& scenario) {
    RunConfig config;
    if (o.config_path) {
        std::ifstream in(*o.config_path);
        if (!in) throw ConfigError("config", "cannot read " + *o.config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        config = parse_config_json(buffer.str());
    } else {
        config = preset(o.preset_name.value_or("default"));
    }
    if (o.preset_name && o.config_path) {
        throw ConfigError("preset", "--preset and --config are mutually exclusive");
    }
    if (!scenario.empty()) config.scenario = scenario;

    PhysicalParams& p = config.scenario_config.params;
    if (o.n_spins) p.n_spins = *o.n_spins;
    if (o.nu) p.nu = *o.nu;
    if (o.lambda) p.lambda_base = *o.lambda;
    if (o.coupling_error) p.coupling_error = *o.coupling_error;
    if (o.quality_factor) p.quality_factor = *o.quality_factor;
    if (o.temperature) p.temperature = *o.temperature;

    PropagatorConfig& i = config.scenario_config.integrator;
    if (o.max_step) i.max_step = *o.max_step;
    if (o.rel_tol) i.relative_tolerance = *o.rel_tol;
    if (o.norm_guard) i.norm_guard = *o.norm_guard;
    if (o.sample_stride) i.sample_stride = *o.sample_stride;

    if (o.pulse_kind || o.duration || o.delta_const || o.delta_start || o.delta_end) {
        PulseSchedule pulse = config.scenario_config.pulse.value_or(PulseSchedule{});
        if (o.pulse_kind) {
            if (*o.pulse_kind == "square") {
                pulse.kind = PulseKind::Square;
            } else if (*o.pulse_kind == "linear_chirp") {
                pulse.kind = PulseKind::LinearChirp;
            } else {
                throw ConfigError("pulse.kind", "unknown pulse kind '" + *o.pulse_kind + "'");
            }
        }
        if (o.duration) pulse.duration = *o.duration;
        if (o.delta_const) pulse.delta_constant = *o.delta_const;
        if (o.delta_start) pulse.delta_start = *o.delta_start;
        if (o.delta_end) pulse.delta_end = *o.delta_end;
        config.scenario_config.pulse = pulse;
    }

    ScenarioConfig& s = config.scenario_config;
    if (o.excitations) s.excitations = *o.excitations;
    if (o.fock_headroom) s.fock_headroom = *o.fock_headroom;
    if (o.adiabatic_threshold) s.adiabatic_threshold = *o.adiabatic_threshold;
    if (o.no_full_space) s.full_space_check = false;

    if (o.output_dir) {
        config.output_dir = *o.output_dir;
    } else if (!o.config_path) {
        if (const char* env = std::getenv("DICKESIM_OUT")) config.output_dir = env;
    }

    validate(p);
    validate(i);
    return config;
}

void echo_if_requested(const Overrides& o, const RunConfig& config) {
    if (!o.echo_path) return;
    std::ofstream out(*o.echo_path, std::ios::trunc);
    if (!out) throw ConfigError("echo-config", "cannot write " + *o.echo_path);
    out << to_config_json(config);
}

ScenarioResult dispatch_scenario(const RunConfig& config) {
    const ScenarioConfig& sc = config.scenario_config;
    if (config.scenario == "d31") return run_d31(sc);
    if (config.scenario == "d32-resonant") return run_d32_resonant(sc);
    if (config.scenario == "d32-adiabatic") return run_d32_adiabatic(sc);
    if (config.scenario == "tune-chirp") return run_tune_chirp(sc);
    if (config.scenario == "rwa") return run_validate_rwa(sc);
    throw ConfigError("scenario", "unknown scenario '" + config.scenario + "' (see `list`)");
}

void print_summary_line(const ScenarioResult& result, const fs::path& dir) {
    std::ostringstream line;
    line << "[dickesim] scenario=" << result.name
         << " final_fidelity=" << format_number(result.final_fidelity)
         << " peak_fidelity=" << format_number(result.peak_fidelity)
         << " peak_time=" << format_number(result.peak_time);
    for (const char* key : {"gate_time", "adiabaticity_metric", "tuned_duration", "terminal_gap",
                            "frame_overlap"}) {
        auto it = result.diagnostics.find(key);
        if (it != result.diagnostics.end()) {
            line << " " << key << "=" << format_number(it->second);
        }
    }
    line << " out=" << dir.string();
    std::cout << line.str() << "\n";
}

int cmd_run(const Overrides& o, const std::string& scenario) {
    const RunConfig config = resolve_config(o, scenario);
    echo_if_requested(o, config);
    const ScenarioResult result = dispatch_scenario(config);
    const fs::path dir(config.output_dir);
    write_scenario_outputs(result, dir);
    if (config.scenario == "tune-chirp") {
        write_sweep_outputs(run_tune_chirp_table(config.scenario_config), dir);
    }
    print_summary_line(result, dir);
    return 0;
}

int cmd_sweep(const Overrides& o, const std::string& scenario, const std::string& grid_spec) {
    RunConfig config = resolve_config(o, scenario);
    std::vector<double> grid;
    if (!grid_spec.empty()) {
        grid = parse_grid(grid_spec);
    } else if (config.sweep && !config.sweep->values.empty()) {
        grid = config.sweep->values;
    } else if (scenario == "coupling") {
        grid = parse_grid("0:0.05:11");
    } else {
        grid = parse_grid("1e4,3.1623e4,1e5,3.16228e5,inf");
    }
    SweepSpec spec;
    spec.parameter = scenario == "coupling" ? "coupling_error" : "quality_factor";
    spec.values = grid;
    config.sweep = spec;
    echo_if_requested(o, config);

    SweepResult result;
    if (scenario == "coupling") {
        result = sweep_coupling_error(config.scenario_config, grid);
    } else if (scenario == "heating") {
        result = sweep_heating(config.scenario_config, grid);
    } else {
        throw ConfigError("scenario", "unknown sweep '" + scenario + "' (coupling | heating)");
    }
    const fs::path dir(config.output_dir);
    write_sweep_outputs(result, dir);
    std::cout << "[dickesim] sweep=" << result.name << " points=" << result.rows.size()
              << " out=" << dir.string() << "\n";
    return 0;
}

int cmd_validate() {
    const auto checks = run_validation_suite();
    bool all_ok = true;
    for (const auto& check : checks) {
        all_ok = all_ok && check.passed;
        std::cout << (check.passed ? "[ok]   " : "[FAIL] ") << check.name << " value="
                  << format_number(check.value) << "  (" << check.detail << ")\n";
    }
    std::cout << (all_ok ? "[dickesim] validation passed\n" : "[dickesim] validation FAILED\n");
    return all_ok ? 0 : 1;
}

int cmd_list() {
    std::cout
        << "scenarios (run):\n"
           "  d31            collective pi pulse |--..->|1>_p -> |D_n^(1)>|0>_p at resonance;\n"
           "                 gate time pi/(sqrt(n) lambda)\n"
           "  d32-resonant   resonant drive of the two-quantum chain; reports the population\n"
           "                 ceiling of |D_3^(2)>\n"
           "  d32-adiabatic  linear-chirp adiabatic passage to |D_3^(2)>; reports the final\n"
           "                 population and the adiabaticity metric\n"
           "  tune-chirp     reproducible scan fixing the default chirp duration\n"
           "  rwa            counter-rotating vs excitation-conserving dynamics; terminal gap\n"
           "sweeps (sweep):\n"
           "  coupling       full-space fidelities vs per-spin coupling droop Delta\n"
           "  heating        open-system fidelities vs cantilever quality factor\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-boson dynamics for Dicke-state preparation on a cantilever bus"};
    app.require_subcommand(1);

    Overrides run_opts, sweep_opts;
    std::string run_scenario, sweep_scenario, sweep_grid;

    CLI::App* run = app.add_subcommand("run", "execute one scenario");
    run->add_option("--scenario", run_scenario, "scenario name (see `list`)")->required();
    add_common_options(run, run_opts);

    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("--scenario", sweep_scenario, "coupling | heating")->required();
    sweep->add_option("--q", sweep_grid, "quality-factor grid, e.g. 1e4,1e5 (heating)");
    sweep->add_option("--grid", sweep_grid, "grid values: a,b,c or start:stop:count");
    add_common_options(sweep, sweep_opts);

    CLI::App* validate_cmd = app.add_subcommand("validate", "run the self-check suite");
    CLI::App* list_cmd = app.add_subcommand("list", "list available scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_opts, run_scenario);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_scenario, sweep_grid);
        if (validate_cmd->parsed()) return cmd_validate();
        if (list_cmd->parsed()) return cmd_list();
    } catch (const ConfigError& e) {
        std::cerr << "error: config key=" << e.key() << ": " << e.what() << "\n";
        return 2;
    } catch (const IntegrationError& e) {
        std::cerr << "error: numerical time=" << format_number(e.time()) << ": " << e.what()
                  << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
