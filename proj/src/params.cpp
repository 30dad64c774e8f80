#include "dicke/params.hpp"

#include <cmath>
#include <string>

namespace dicke {

void validate(const PhysicalParams& params) {
    if (params.n_spins < 1) {
        throw ConfigError("n_spins", "n_spins must be at least 1");
    }
    if (!(params.nu > 0.0)) {
        throw ConfigError("nu", "nu must be positive, got " + std::to_string(params.nu));
    }
    if (params.lambda_base < 0.0) {
        throw ConfigError("lambda",
                          "lambda must be non-negative, got " + std::to_string(params.lambda_base));
    }
    if (!(params.quality_factor > 0.0)) {
        throw ConfigError("quality_factor", "quality_factor must be positive");
    }
    if (params.temperature < 0.0) {
        throw ConfigError("temperature", "temperature must be non-negative");
    }
    per_spin_couplings(params);  // rejects coupling_error too large
}

PhysicalParams default_params() { return PhysicalParams{}; }

double thermal_occupation(double temperature, double nu) {
    if (temperature < 0.0) throw ConfigError("temperature", "temperature must be non-negative");
    if (!(nu > 0.0)) throw ConfigError("nu", "nu must be positive");
    if (temperature == 0.0) return 0.0;
    const double x = kHbar * nu / (kBoltzmann * temperature);
    return 1.0 / std::expm1(x);
}

double heating_rate(double nu, double quality_factor) {
    if (!(quality_factor > 0.0)) throw ConfigError("quality_factor", "Q must be positive");
    return nu / quality_factor;
}

std::vector<double> per_spin_couplings(const PhysicalParams& params) {
    std::vector<double> couplings(params.n_spins);
    for (int j = 1; j <= params.n_spins; ++j) {
        const double value = (1.0 - (j - 1) * params.coupling_error) * params.lambda_base;
        if (value < 0.0) {
            throw ConfigError("coupling_error",
                              "coupling_error " + std::to_string(params.coupling_error) +
                                  " drives spin " + std::to_string(j) + " coupling negative");
        }
        couplings[j - 1] = value;
    }
    return couplings;
}

double zero_point_amplitude(double effective_mass, double nu) {
    return std::sqrt(kHbar / (2.0 * effective_mass * nu));
}

}  // namespace dicke
