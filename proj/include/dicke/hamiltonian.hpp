// hamiltonian.hpp — every Hamiltonian of the model
//
// Basis conventions: dressed spin basis {|->, |+>} with |±> = (|-1> ± |0>)/sqrt(2)
// relative to the bare triplet sublevels; the bare basis appears only in
// documentation. In the dressed basis the bare-basis drive |0><-1| + h.c. is
// diagonal (sigma_z-like) and the bare sigma_z becomes the dressed sigma_x.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "dicke/operators.hpp"
#include "dicke/params.hpp"
#include "dicke/pulse.hpp"

namespace dicke {

using SparseMatrixXcd = Eigen::SparseMatrix<Complex>;

// Excitation-conserving form after the rotating-wave approximation and the
// detuning phase transformation:
//   H(delta) = sum_j (lambda_j/2)(a sigma+_j + a† sigma-_j) - delta * sum_j |+>_j<+|
// Valid for both encodings; the symmetric encoding requires equal couplings.
Operator hamiltonian_rwa(const HilbertSpace& space, const std::vector<double>& couplings,
                         double delta);

// Interaction-picture Hamiltonian at microwave resonance, keeping the
// counter-rotating terms:
//   H(t) = (Omega/2) sum_j sigma_z~_j
//        + sum_j (lambda_j/2)(a e^{-i nu t} + a† e^{+i nu t}) sigma_x~_j
// where sigma_z~/sigma_x~ are the dressed-basis Pauli operators.
Operator hamiltonian_interaction_picture(const HilbertSpace& space, const PhysicalParams& params,
                                         double omega_rabi, double t);

// Tridiagonal effective model on the symmetric chain {|D_n^(k)> |m-k> :
// k = 0..min(n,m)}. Level k carries diagonal -k*delta; couplings[k] joins
// levels k and k+1 with (lambda/2) sqrt((m-k)(k+1)(n-k)).
struct LadderModel {
    int n_spins = 0;
    int excitations = 0;  // m
    double lambda = 0.0;
    std::vector<double> couplings;
    std::vector<int> detuning_weights;
    std::vector<std::string> basis_labels;

    int levels() const { return static_cast<int>(detuning_weights.size()); }
    Eigen::MatrixXcd hamiltonian(double delta) const;
    Eigen::MatrixXcd weight_matrix() const;  // diag(detuning_weights)
};

LadderModel effective_ladder(int n, int m, double lambda);

// H(t) = constant_part + delta(t) * (detuning_part + identity_shift_weight * I).
// The identity shift is pure gauge (a global phase); scenarios use it to center
// the active sector's spectrum, which lowers the stiffest frequency the
// integrator has to resolve.
struct AffineHamiltonian {
    SparseMatrixXcd constant_part;
    SparseMatrixXcd detuning_part;
    PulseSchedule schedule;
    double identity_shift_weight = 0.0;

    int dim() const { return static_cast<int>(constant_part.rows()); }
    double delta_at(double t) const { return detuning_at(schedule, t); }
    Eigen::MatrixXcd dense_at(double t) const;
    // out = H(t) * psi
    void apply(double t, const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) const;
    // out = H(t)*rho - rho*H(t)
    void commutator(double t, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const;
    // Upper bound on ||H(t)||_inf over the schedule window.
    double spectral_bound() const;
};

AffineHamiltonian rwa_affine(const HilbertSpace& space, const std::vector<double>& couplings,
                             const PulseSchedule& schedule, double identity_shift_weight = 0.0);
AffineHamiltonian ladder_affine(const LadderModel& ladder, const PulseSchedule& schedule,
                                double identity_shift_weight = 0.0);

// Precomputed interaction-picture source with the drive tied to a schedule,
// Omega(t) = nu - delta(t).
class InteractionPictureHamiltonian {
public:
    InteractionPictureHamiltonian(const HilbertSpace& space, const PhysicalParams& params,
                                  PulseSchedule schedule);

    int dim() const { return static_cast<int>(drive_part_.rows()); }
    Eigen::MatrixXcd dense_at(double t) const;
    void apply(double t, const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) const;
    double spectral_bound() const;

private:
    double nu_;
    PulseSchedule schedule_;
    Eigen::MatrixXcd drive_part_;     // sum_j sigma_z~_j / 2
    Eigen::MatrixXcd rotating_part_;  // a * sum_j (lambda_j/2) sigma_x~_j
};

}  // namespace dicke
