// params.hpp — physical parameters and derived rates
//
// Unit convention: every frequency-like quantity (nu, lambda, delta, Omega,
// Gamma) is angular and carried in rad/s with hbar = 1. Quoted "MHz" values
// read as 1e6 rad/s; this is the only reading consistent with the default
// cantilever's zero-point amplitude of 6.98e-13 m and its hbar*nu/k_B
// temperature scale of about 113.5 uK (see zero_point_amplitude and the unit
// tests).
#pragma once

#include <vector>

#include "dicke/errors.hpp"

namespace dicke {

inline constexpr double kHbar = 1.0546e-34;       // J s
inline constexpr double kBoltzmann = 1.381e-23;   // J/K

struct PhysicalParams {
    int n_spins = 3;
    double nu = 14.87e6;          // cantilever mode angular frequency [rad/s]
    double lambda_base = 0.96e6;  // spin-boson coupling of the first spin [rad/s]
    double coupling_error = 0.0;  // relative droop Delta: lambda_j = [1-(j-1)Delta]*lambda
    double quality_factor = 1e5;
    double temperature = 114e-6;  // [K]
};

// Throws ConfigError naming the offending field.
void validate(const PhysicalParams& params);

// Default configuration: three NV spins on a Si cantilever beam
// (l = 5 um, w = tau = 50 nm, M = 7.28e-18 kg) cooled to 114 uK.
PhysicalParams default_params();

// Cantilever geometry kept as documentation metadata; it never enters the
// dynamics (the coupling lambda already absorbs it).
struct CantileverGeometry {
    double length = 5e-6;             // m
    double width = 50e-9;             // m
    double thickness = 50e-9;         // m
    double effective_mass = 7.28e-18; // kg
};

// Bose occupation 1/[exp(hbar*nu/(k_B T)) - 1]; returns 0 at T = 0.
double thermal_occupation(double temperature, double nu);

// Heating rate Gamma = nu / Q of the boson mode [1/s].
double heating_rate(double nu, double quality_factor);

// lambda_j = [1 - (j-1)*Delta] * lambda for j = 1..n; throws if any value
// would be negative.
std::vector<double> per_spin_couplings(const PhysicalParams& params);

// sqrt(hbar / (2 M nu)) — the zero-point amplitude cross-check for the unit
// convention above.
double zero_point_amplitude(double effective_mass, double nu);

}  // namespace dicke
