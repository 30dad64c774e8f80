#include "dicke/hamiltonian.hpp"

#include <cmath>
#include <complex>

namespace dicke {

namespace {

double infinity_norm(const SparseMatrixXcd& m) {
    std::vector<double> row_sums(m.rows(), 0.0);
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrixXcd::InnerIterator it(m, k); it; ++it) {
            row_sums[it.row()] += std::abs(it.value());
        }
    }
    double max = 0.0;
    for (double v : row_sums) max = std::max(max, v);
    return max;
}

Eigen::MatrixXcd rwa_coupling_matrix(const HilbertSpace& space,
                                     const std::vector<double>& couplings) {
    if (static_cast<int>(couplings.size()) != space.n_spins()) {
        throw ConfigError("couplings", "expected " + std::to_string(space.n_spins()) +
                                           " couplings, got " + std::to_string(couplings.size()));
    }
    const Eigen::MatrixXcd a = boson_annihilation(space).matrix();
    Eigen::MatrixXcd coupling = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    if (space.encoding() == SpinEncoding::Qubits) {
        for (int j = 1; j <= space.n_spins(); ++j) {
            coupling += 0.5 * couplings[j - 1] * (a * spin_raise(space, j).matrix());
        }
    } else {
        for (double c : couplings) {
            if (std::abs(c - couplings.front()) > 1e-12 * std::abs(couplings.front())) {
                throw ConfigError("couplings",
                                  "the symmetric encoding requires equal couplings");
            }
        }
        coupling = 0.5 * couplings.front() * (a * collective_raise(space).matrix());
    }
    return coupling + coupling.adjoint().eval();
}

}  // namespace

Operator hamiltonian_rwa(const HilbertSpace& space, const std::vector<double>& couplings,
                         double delta) {
    Eigen::MatrixXcd h = rwa_coupling_matrix(space, couplings);
    h -= delta * excitation_weight(space).matrix();
    return Operator(space, std::move(h));
}

Operator hamiltonian_interaction_picture(const HilbertSpace& space, const PhysicalParams& params,
                                         double omega_rabi, double t) {
    InteractionPictureHamiltonian source(
        space, params, PulseSchedule::square(params.nu - omega_rabi, std::max(t, 1.0)));
    return Operator(space, source.dense_at(t));
}

Eigen::MatrixXcd LadderModel::hamiltonian(double delta) const {
    const int k = levels();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(k, k);
    for (int i = 0; i < k; ++i) h(i, i) = -double(detuning_weights[i]) * delta;
    for (int i = 0; i + 1 < k; ++i) {
        h(i, i + 1) = couplings[i];
        h(i + 1, i) = couplings[i];
    }
    return h;
}

Eigen::MatrixXcd LadderModel::weight_matrix() const {
    const int k = levels();
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(k, k);
    for (int i = 0; i < k; ++i) w(i, i) = double(detuning_weights[i]);
    return w;
}

LadderModel effective_ladder(int n, int m, double lambda) {
    if (n < 1) throw ConfigError("n_spins", "n must be at least 1");
    if (m < 0) throw ConfigError("m", "m must be non-negative");
    LadderModel ladder;
    ladder.n_spins = n;
    ladder.excitations = m;
    ladder.lambda = lambda;
    const int top = std::min(n, m);
    for (int k = 0; k <= top; ++k) {
        ladder.detuning_weights.push_back(k);
        ladder.basis_labels.push_back("D" + std::to_string(n) + "^" + std::to_string(k) + "|" +
                                      std::to_string(m - k) + ">");
        if (k < top) {
            ladder.couplings.push_back(0.5 * lambda *
                                       std::sqrt(double(m - k) * double(k + 1) * double(n - k)));
        }
    }
    return ladder;
}

Eigen::MatrixXcd AffineHamiltonian::dense_at(double t) const {
    const double delta = delta_at(t);
    Eigen::MatrixXcd h = Eigen::MatrixXcd(constant_part) + delta * Eigen::MatrixXcd(detuning_part);
    if (identity_shift_weight != 0.0) {
        h += delta * identity_shift_weight * Eigen::MatrixXcd::Identity(dim(), dim());
    }
    return h;
}

void AffineHamiltonian::apply(double t, const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) const {
    const double delta = delta_at(t);
    out.noalias() = constant_part * psi;
    out.noalias() += delta * (detuning_part * psi);
    if (identity_shift_weight != 0.0) out += (delta * identity_shift_weight) * psi;
}

void AffineHamiltonian::commutator(double t, const Eigen::MatrixXcd& rho,
                                   Eigen::MatrixXcd& out) const {
    const double delta = delta_at(t);
    out.noalias() = constant_part * rho;
    out.noalias() -= rho * constant_part;
    out.noalias() += delta * (detuning_part * rho);
    out.noalias() -= delta * (rho * detuning_part);
    // the identity shift commutes with everything
}

double AffineHamiltonian::spectral_bound() const {
    const double d0 = std::abs(detuning_at(schedule, 0.0));
    const double d1 = std::abs(detuning_at(schedule, schedule.duration));
    const double dmax = std::max(d0, d1);
    return infinity_norm(constant_part) +
           dmax * (infinity_norm(detuning_part) + std::abs(identity_shift_weight));
}

AffineHamiltonian rwa_affine(const HilbertSpace& space, const std::vector<double>& couplings,
                             const PulseSchedule& schedule, double identity_shift_weight) {
    AffineHamiltonian h;
    h.constant_part = rwa_coupling_matrix(space, couplings).sparseView(1.0, 1e-300);
    h.detuning_part =
        Eigen::MatrixXcd(-excitation_weight(space).matrix()).sparseView(1.0, 1e-300);
    h.schedule = schedule;
    h.identity_shift_weight = identity_shift_weight;
    return h;
}

AffineHamiltonian ladder_affine(const LadderModel& ladder, const PulseSchedule& schedule,
                                double identity_shift_weight) {
    AffineHamiltonian h;
    h.constant_part = ladder.hamiltonian(0.0).sparseView(1.0, 1e-300);
    h.detuning_part = Eigen::MatrixXcd(-ladder.weight_matrix()).sparseView(1.0, 1e-300);
    h.schedule = schedule;
    h.identity_shift_weight = identity_shift_weight;
    return h;
}

InteractionPictureHamiltonian::InteractionPictureHamiltonian(const HilbertSpace& space,
                                                             const PhysicalParams& params,
                                                             PulseSchedule schedule)
    : nu_(params.nu), schedule_(schedule) {
    if (space.encoding() != SpinEncoding::Qubits) {
        throw ConfigError("space", "the interaction-picture model requires the qubit encoding");
    }
    PhysicalParams p = params;
    p.n_spins = space.n_spins();
    const std::vector<double> couplings = per_spin_couplings(p);
    drive_part_ = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    Eigen::MatrixXcd coupling_spins = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int j = 1; j <= space.n_spins(); ++j) {
        drive_part_ += 0.5 * spin_sigma_z(space, j).matrix();
        coupling_spins += 0.5 * couplings[j - 1] * spin_sigma_x(space, j).matrix();
    }
    rotating_part_ = boson_annihilation(space).matrix() * coupling_spins;
}

Eigen::MatrixXcd InteractionPictureHamiltonian::dense_at(double t) const {
    const double omega = drive_at(schedule_, nu_, t);
    const Complex phase = std::exp(Complex(0.0, -nu_ * t));
    Eigen::MatrixXcd h = omega * drive_part_;
    h += phase * rotating_part_;
    h += (std::conj(phase) * rotating_part_.adjoint()).eval();
    return h;
}

void InteractionPictureHamiltonian::apply(double t, const Eigen::VectorXcd& psi,
                                          Eigen::VectorXcd& out) const {
    const double omega = drive_at(schedule_, nu_, t);
    const Complex phase = std::exp(Complex(0.0, -nu_ * t));
    out.noalias() = omega * (drive_part_ * psi);
    out.noalias() += phase * (rotating_part_ * psi);
    out.noalias() += std::conj(phase) * (rotating_part_.adjoint() * psi);
}

double InteractionPictureHamiltonian::spectral_bound() const {
    const double omega_max =
        std::max(std::abs(drive_at(schedule_, nu_, 0.0)), std::abs(drive_at(schedule_, nu_, schedule_.duration)));
    return omega_max * drive_part_.cwiseAbs().rowwise().sum().maxCoeff() +
           2.0 * rotating_part_.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace dicke
