// experiments.hpp — named, reproducible scenarios
//
// Protocols are expressed in terms of the detuning schedule delta(t). Fidelity
// scoring is uniform across scenarios: the reduced spin state against the
// target Dicke state, F = <D| Tr_boson(.) |D>. For closed runs ending in a
// product state this coincides with the joint fidelity.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dicke/morris_shore.hpp"
#include "dicke/propagate.hpp"

namespace dicke {

// Detuning sweep window of the adiabatic passage, in units of lambda.
inline constexpr double kChirpSpanLambdas = 8.0;
// Chirp duration found by run_tune_chirp at the default parameters: the first
// 0.25 us step from 10 us upward where the passage exceeds 0.99 final
// population while the adiabaticity metric stays below 0.1.
inline constexpr double kTunedChirpDuration = 50.75e-6;  // [s]
inline constexpr double kAdiabaticThresholdDefault = 0.1;
// Default Fock truncation: N_max = excitations + headroom.
inline constexpr int kFockHeadroom = 6;

struct ScenarioConfig {
    PhysicalParams params;
    PropagatorConfig integrator;
    std::optional<PulseSchedule> pulse;  // scenario default when absent
    int excitations = 2;                 // m for the D_n^(m) scenarios
    double adiabatic_threshold = kAdiabaticThresholdDefault;
    int fock_headroom = kFockHeadroom;
    bool full_space_check = true;  // cross-run the ladder protocols in the full space
};

struct ScenarioResult {
    std::string name;
    double final_fidelity = 0.0;
    double peak_fidelity = 0.0;
    double peak_time = 0.0;
    Trajectory trajectory;
    std::vector<std::string> population_labels;
    ScenarioConfig config;
    std::map<std::string, double> diagnostics;
};

struct SweepResult {
    std::string name;
    std::string parameter;
    std::vector<double> grid;
    std::vector<std::map<std::string, double>> rows;  // one per grid point, same keys
};

// The default linear chirp: delta from -8 lambda to +8 lambda over the tuned
// duration.
PulseSchedule default_chirp(const PhysicalParams& params);

// Collective pi-pulse |-- ... -> |1>_p  ->  |D_n^(1)> |0>_p at resonance;
// the gate time is pi / (sqrt(n) lambda).
double d31_gate_time(const PhysicalParams& params);
ScenarioResult run_d31(const ScenarioConfig& cfg);

// Resonant drive of the m = 2 chain; scans the window for the population
// ceiling of |D_n^(2)>.
ScenarioResult run_d32_resonant(const ScenarioConfig& cfg);

// Linear-chirp adiabatic passage along the m = 2 chain.
ScenarioResult run_d32_adiabatic(const ScenarioConfig& cfg);

// Reproducible search for the default chirp duration: step T upward from
// 10 us in 0.25 us increments until final population > 0.99 and metric <
// threshold. Diagnostics carry the tuned duration; rows of the scan are
// exposed through run_tune_chirp_table.
ScenarioResult run_tune_chirp(const ScenarioConfig& cfg);
SweepResult run_tune_chirp_table(const ScenarioConfig& cfg);

// Same protocol under the interaction-picture Hamiltonian (counter-rotating
// terms kept) versus the excitation-conserving form; reports the terminal
// fidelity gap and the frame-aligned overlap of the two final states.
ScenarioResult run_validate_rwa(const ScenarioConfig& cfg);

// Full-space preparations with per-spin coupling droop lambda_j = [1-(j-1)D]L.
SweepResult sweep_coupling_error(const ScenarioConfig& cfg, const std::vector<double>& delta_grid);

// Open-system preparations in the symmetric ⊗ Fock representation, one row per
// quality factor; +infinity means gamma = 0.
SweepResult sweep_heating(const ScenarioConfig& cfg, const std::vector<double>& q_grid);

// Fast self-checks for the command-line `validate` subcommand.
struct ValidationCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;
    std::string detail;
};
std::vector<ValidationCheck> run_validation_suite();

}  // namespace dicke
