#include "dicke/morris_shore.hpp"

#include <cmath>

namespace dicke {

MSDecomposition ms_decompose(const Eigen::MatrixXcd& coupling_block) {
    if (!coupling_block.allFinite()) {
        throw ConfigError("coupling_block", "coupling block has non-finite entries");
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coupling_block,
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sigma = svd.singularValues();
    const double threshold = sigma.size() > 0 ? 1e-12 * std::max(sigma.maxCoeff(), 1e-300) : 0.0;

    MSDecomposition result;
    const int lower_dim = static_cast<int>(coupling_block.cols());
    for (int i = 0; i < lower_dim; ++i) {
        if (i < sigma.size() && sigma(i) > threshold) {
            BrightPair pair;
            pair.lower = svd.matrixV().col(i);
            pair.upper = svd.matrixU().col(i);
            pair.coupling = sigma(i);
            result.bright_pairs.push_back(std::move(pair));
        } else {
            result.dark_states.push_back(svd.matrixV().col(i));
        }
    }
    return result;
}

std::vector<PureState> dark_state_catalogue_n3(int m) {
    if (m != 1 && m != 2) {
        throw ConfigError("m", "the explicit catalogue covers m = 1 and m = 2 only");
    }
    const HilbertSpace spin_space = HilbertSpace::qubits(3, 0);
    const HilbertSpace space = build_space(3, m);
    // Configuration indices, spin 1 = most significant bit.
    const int pmm = 0b100, mpm = 0b010, mmp = 0b001;
    const int ppm = 0b110, pmp = 0b101, mpp = 0b011;

    auto make = [&](std::vector<std::pair<int, double>> terms) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(spin_space.dim());
        for (auto [idx, w] : terms) v(idx) = w;
        v.normalize();
        return tensor_with_fock(PureState(spin_space, v), 0, space);
    };

    if (m == 1) {
        return {make({{pmm, 1.0}, {mpm, -2.0}, {mmp, 1.0}}),
                make({{pmm, 1.0}, {mmp, -1.0}})};
    }
    return {make({{ppm, 1.0}, {pmp, -2.0}, {mpp, 1.0}}),
            make({{pmm, 1.0}, {mpm, -2.0}, {mmp, 1.0}}),
            make({{ppm, 1.0}, {mpp, -1.0}}),
            make({{pmm, 1.0}, {mmp, -1.0}})};
}

double adiabaticity_metric(const LadderModel& ladder, const PulseSchedule& schedule,
                           const std::vector<double>& grid) {
    const int k = ladder.levels();
    if (k < 2) return 0.0;
    const Eigen::MatrixXcd weights = ladder.weight_matrix();
    const double gap_floor = 1e-6 * std::abs(ladder.lambda);
    double metric = 0.0;
    for (double t : grid) {
        const double slope = detuning_slope_at(schedule, t);
        if (slope == 0.0) continue;
        const Eigen::MatrixXcd h = ladder.hamiltonian(detuning_at(schedule, t));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
        const Eigen::MatrixXcd dh = -slope * weights;
        const Eigen::MatrixXcd dh_eigenbasis = eig.eigenvectors().adjoint() * dh * eig.eigenvectors();
        for (int a = 0; a < k; ++a) {
            for (int b = a + 1; b < k; ++b) {
                const double gap = eig.eigenvalues()(b) - eig.eigenvalues()(a);
                if (std::abs(gap) < gap_floor) {
                    throw IntegrationError("degenerate spectral crossing in the adiabaticity metric",
                                           t);
                }
                metric = std::max(metric, std::abs(dh_eigenbasis(a, b)) / (gap * gap));
            }
        }
    }
    return metric;
}

double adiabaticity_metric(const LadderModel& ladder, const PulseSchedule& schedule,
                           int n_samples) {
    std::vector<double> grid(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        grid[i] = schedule.duration * double(i) / double(n_samples - 1);
    }
    return adiabaticity_metric(ladder, schedule, grid);
}

}  // namespace dicke
