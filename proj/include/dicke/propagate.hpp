// propagate.hpp — time-evolution engines
//
// Both engines use a fixed-step classical Runge-Kutta integrator. The step is
// seeded from the spectral bound of the Hamiltonian and halved until two
// consecutive refinement levels agree on the final state within the configured
// tolerance, so every run is deterministic for a given configuration.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/hamiltonian.hpp"
#include "dicke/states.hpp"

namespace dicke {

struct PropagatorConfig {
    double max_step = 1e-8;            // [s]
    double relative_tolerance = 1e-9;  // refinement acceptance, in (0, 1e-3]
    double norm_guard = 1e-8;          // admissible |norm - 1| resp. |trace - 1|
    int sample_stride = 0;             // steps between samples; 0 = automatic
};

void validate(const PropagatorConfig& cfg);

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> pure_states;      // one engine fills one of these
    std::vector<Eigen::MatrixXcd> density_states;
    std::map<std::string, std::vector<double>> observables;

    double dt = 0.0;
    long long steps = 0;
    int refinements = 0;
    double norm_drift_max = 0.0;
    double leakage_max = 0.0;

    const Eigen::VectorXcd& final_pure() const { return pure_states.back(); }
    const Eigen::MatrixXcd& final_density() const { return density_states.back(); }
    const std::vector<double>& series(const std::string& name) const;
};

// Named quantities recorded at every sample.
struct ObservableSet {
    // |<phi|psi>|^2 resp. <phi|rho|phi>
    std::vector<std::pair<std::string, Eigen::VectorXcd>> projections;
    // <A> for Hermitian A
    std::vector<std::pair<std::string, Eigen::MatrixXcd>> expectations;
};

// Non-owning view of a time-dependent Hamiltonian.
struct HamiltonianView {
    std::function<void(double, const Eigen::VectorXcd&, Eigen::VectorXcd&)> apply;
    std::function<void(double, const Eigen::MatrixXcd&, Eigen::MatrixXcd&)> commutator;
    double spectral_bound = 0.0;

    static HamiltonianView of(const AffineHamiltonian& h);
    static HamiltonianView of(const InteractionPictureHamiltonian& h);
    static HamiltonianView constant(const Eigen::MatrixXcd& h);
};

// Schrodinger propagation of a bare coefficient vector (no space attached, so
// no leakage tracking). Used directly for ladder models.
Trajectory evolve_closed_generic(const HamiltonianView& h, const Eigen::VectorXcd& psi0,
                                 double t0, double t1, const PropagatorConfig& cfg,
                                 const ObservableSet& observables = {});

// Schrodinger propagation on a Hilbert space; tracks Fock leakage.
Trajectory evolve_schrodinger(const HamiltonianView& h, const PureState& psi0, double t0,
                              double t1, const PropagatorConfig& cfg,
                              const ObservableSet& observables = {});

// Master-equation propagation with the thermal boson dissipator
//   L rho = gamma(n_bar+1)/2 (2 a rho a† - a†a rho - rho a†a)
//         + gamma n_bar /2   (2 a† rho a - a a† rho - rho a a†),
// the mode operators acting on the Fock factor of rho's space. Raises a
// cutoff-too-small error if the top Fock level accumulates population.
Trajectory evolve_lindblad(const HamiltonianView& h, const DensityMatrix& rho0, double gamma,
                           double n_bar, double t0, double t1, const PropagatorConfig& cfg,
                           const ObservableSet& observables = {});

// Fidelity helpers for raw trajectory states (integration may leave the norm
// within the guard but outside the strict construction tolerance).
double reduced_spin_fidelity(const HilbertSpace& space, const Eigen::VectorXcd& psi,
                             const PureState& spin_target);
double reduced_spin_fidelity(const HilbertSpace& space, const Eigen::MatrixXcd& rho,
                             const PureState& spin_target);

}  // namespace dicke
