// morris_shore.hpp — bright/dark factorization of degenerate two-manifold
// couplings and the adiabaticity metric
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dicke/hamiltonian.hpp"
#include "dicke/states.hpp"

namespace dicke {

// One coupled two-level subsystem produced by the transformation: a lower
// bright state, its upper partner, and their effective coupling strength.
struct BrightPair {
    Eigen::VectorXcd lower;
    Eigen::VectorXcd upper;
    double coupling = 0.0;
};

struct MSDecomposition {
    std::vector<BrightPair> bright_pairs;        // couplings sorted descending
    std::vector<Eigen::VectorXcd> dark_states;   // lower-manifold null space
};

// Singular-value factorization of a coupling block B[u][l] = <upper_u|H|lower_l>.
// Bright pairs carry the non-zero singular values; dark states span the kernel,
// so the number of dark states is lower dimension minus rank.
MSDecomposition ms_decompose(const Eigen::MatrixXcd& coupling_block);

// The decoupled states of the three-spin problem as full-space vectors with a
// vacuum boson factor, on build_space(3, m).
//   m = 1: (|+--> - 2|-+-> + |--+>)/sqrt(6), (|+--> - |--+>)/sqrt(2)
//   m = 2: the two decoupled doublets, upper members first within each pair.
std::vector<PureState> dark_state_catalogue_n3(int m);

// max over the grid and over level pairs l != k of
//   |<E_l(t)| dH/dt |E_k(t)>| / (E_k(t) - E_l(t))^2,
// with dH/dt = -(d delta/dt) * diag(weights) taken analytically from the
// schedule. A spectral gap below 1e-6 * lambda raises a degenerate-crossing
// error.
double adiabaticity_metric(const LadderModel& ladder, const PulseSchedule& schedule,
                           const std::vector<double>& grid);
double adiabaticity_metric(const LadderModel& ladder, const PulseSchedule& schedule,
                           int n_samples = 2001);

}  // namespace dicke
