// report.hpp — mapping of scenario and sweep results onto the CSV schemas
#pragma once

#include <filesystem>

#include "dicke/config.hpp"
#include "dicke/csv.hpp"

namespace dicke {

CsvTable scenario_summary_table(const ScenarioResult& result);
CsvTable trajectory_table(const ScenarioResult& result);
CsvTable diagnostics_table(const ScenarioResult& result);
CsvTable sweep_table(const SweepResult& result);

// Writes summary.csv, trajectory.csv, diagnostics.csv (plus .gnuplot-dat
// mirrors) into the directory; returns the directory.
std::filesystem::path write_scenario_outputs(const ScenarioResult& result,
                                             const std::filesystem::path& dir);
// Writes sweep.csv plus its mirror.
std::filesystem::path write_sweep_outputs(const SweepResult& result,
                                          const std::filesystem::path& dir);

}  // namespace dicke
