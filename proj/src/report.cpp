#include "dicke/report.hpp"

#include <cmath>

namespace dicke {

namespace {

double diagnostic_or_nan(const ScenarioResult& result, const std::string& key) {
    auto it = result.diagnostics.find(key);
    return it == result.diagnostics.end() ? std::nan("") : it->second;
}

}  // namespace

CsvTable scenario_summary_table(const ScenarioResult& result) {
    CsvTable table;
    table.header = {"schema",         "scenario",      "n_spins",
                    "excitations",    "nu",            "lambda",
                    "coupling_error", "quality_factor", "temperature",
                    "pulse_kind",     "pulse_duration", "delta_start",
                    "delta_end",      "final_fidelity", "peak_fidelity",
                    "peak_time",      "adiabaticity_metric", "leakage_max",
                    "norm_drift_max", "dt",            "steps",
                    "refinements"};
    const PhysicalParams& p = result.config.params;
    const PulseSchedule* pulse =
        result.config.pulse.has_value() ? &result.config.pulse.value() : nullptr;
    std::vector<std::string> row;
    row.push_back(kCsvSchemaVersion);
    row.push_back(result.name);
    row.push_back(std::to_string(p.n_spins));
    row.push_back(std::to_string(result.config.excitations));
    row.push_back(format_number(p.nu));
    row.push_back(format_number(p.lambda_base));
    row.push_back(format_number(p.coupling_error));
    row.push_back(format_number(p.quality_factor));
    row.push_back(format_number(p.temperature));
    if (pulse) {
        row.push_back(pulse->kind == PulseKind::Square ? "square" : "linear_chirp");
        row.push_back(format_number(pulse->duration));
        row.push_back(format_number(detuning_at(*pulse, 0.0)));
        row.push_back(format_number(detuning_at(*pulse, pulse->duration)));
    } else {
        row.push_back("scenario_default");
        row.push_back(format_number(diagnostic_or_nan(result, "chirp_duration")));
        row.push_back(format_number(diagnostic_or_nan(result, "delta_start")));
        row.push_back(format_number(diagnostic_or_nan(result, "delta_end")));
    }
    row.push_back(format_number(result.final_fidelity));
    row.push_back(format_number(result.peak_fidelity));
    row.push_back(format_number(result.peak_time));
    row.push_back(format_number(diagnostic_or_nan(result, "adiabaticity_metric")));
    row.push_back(format_number(result.trajectory.leakage_max));
    row.push_back(format_number(result.trajectory.norm_drift_max));
    row.push_back(format_number(result.trajectory.dt));
    row.push_back(format_number(double(result.trajectory.steps)));
    row.push_back(format_number(double(result.trajectory.refinements)));
    table.rows.push_back(std::move(row));
    return table;
}

CsvTable trajectory_table(const ScenarioResult& result) {
    CsvTable table;
    table.header.push_back("time");
    std::vector<const std::vector<double>*> columns;
    auto add_series = [&](const std::string& name) {
        auto it = result.trajectory.observables.find(name);
        if (it == result.trajectory.observables.end()) return;
        table.header.push_back(name);
        columns.push_back(&it->second);
    };
    add_series("fidelity");
    for (const std::string& label : result.population_labels) add_series(label);
    add_series("boson_occupation");
    add_series("nex");
    add_series("leakage");
    add_series("norm_error");

    for (size_t i = 0; i < result.trajectory.times.size(); ++i) {
        std::vector<double> row;
        row.push_back(result.trajectory.times[i]);
        for (const auto* series : columns) row.push_back((*series)[i]);
        table.add_row(row);
    }
    return table;
}

CsvTable diagnostics_table(const ScenarioResult& result) {
    CsvTable table;
    table.header = {"key", "value"};
    for (const auto& [key, value] : result.diagnostics) {
        table.rows.push_back({key, format_number(value)});
    }
    return table;
}

CsvTable sweep_table(const SweepResult& result) {
    CsvTable table;
    table.header.push_back("index");
    std::vector<std::string> keys;
    if (!result.rows.empty()) {
        keys.reserve(result.rows.front().size());
        for (const auto& [key, value] : result.rows.front()) keys.push_back(key);
        for (const std::string& key : keys) table.header.push_back(key);
    }
    for (size_t i = 0; i < result.rows.size(); ++i) {
        std::vector<double> row;
        row.push_back(double(i));
        for (const std::string& key : keys) row.push_back(result.rows[i].at(key));
        table.add_row(row);
    }
    return table;
}

std::filesystem::path write_scenario_outputs(const ScenarioResult& result,
                                             const std::filesystem::path& dir) {
    const CsvTable summary = scenario_summary_table(result);
    const CsvTable trajectory = trajectory_table(result);
    const CsvTable diagnostics = diagnostics_table(result);
    write_csv(dir / "summary.csv", summary);
    write_csv(dir / "trajectory.csv", trajectory);
    write_csv(dir / "diagnostics.csv", diagnostics);
    write_gnuplot(dir / "trajectory.gnuplot-dat", trajectory);
    return dir;
}

std::filesystem::path write_sweep_outputs(const SweepResult& result,
                                          const std::filesystem::path& dir) {
    const CsvTable table = sweep_table(result);
    write_csv(dir / "sweep.csv", table);
    write_gnuplot(dir / "sweep.gnuplot-dat", table);
    return dir;
}

}  // namespace dicke
