// states.hpp — pure states, density matrices, canonical states and metrics
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dicke/hilbert.hpp"

namespace dicke {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-8;

// Normalized state vector tied to its space. Construction checks the norm.
class PureState {
public:
    PureState(HilbertSpace space, Eigen::VectorXcd amplitudes);

    const HilbertSpace& space() const { return space_; }
    const Eigen::VectorXcd& amplitudes() const { return amp_; }
    Eigen::VectorXcd& amplitudes() { return amp_; }

    double norm_error() const { return std::abs(amp_.norm() - 1.0); }

private:
    HilbertSpace space_;
    Eigen::VectorXcd amp_;
};

// Hermitian, unit-trace matrix tied to its space. Construction checks both;
// positivity is available on demand (it is integrator-tolerance dependent).
class DensityMatrix {
public:
    DensityMatrix(HilbertSpace space, Eigen::MatrixXcd elements);

    static DensityMatrix from_pure(const PureState& psi);

    const HilbertSpace& space() const { return space_; }
    const Eigen::MatrixXcd& elements() const { return rho_; }
    Eigen::MatrixXcd& elements() { return rho_; }

    double trace_error() const { return std::abs(rho_.trace().real() - 1.0) + std::abs(rho_.trace().imag()); }
    double hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;

private:
    HilbertSpace space_;
    Eigen::MatrixXcd rho_;
};

// |spin_state> ⊗ |fock> as a basis vector of the space.
PureState basis_state(const HilbertSpace& space, int spin_state, int fock);

// Symmetric Dicke state |D_n^(m)>: equal-amplitude superposition of every
// placement of m |+> excitations among n spins. Lives on the spin-only factor
// (fock_cutoff = 0).
PureState dicke_state(int n, int m);

// Embed a spin-only state with a definite Fock level into a larger space.
PureState tensor_with_fock(const PureState& spin_state, int fock, const HilbertSpace& target);

// Ordered chain {|D_n^(k)> ⊗ |m-k> : k = 0..min(n,m)} as full-space vectors.
std::vector<PureState> symmetric_subspace_basis(int n, int total_excitations, int fock_cutoff);

// |<target|psi>|^2 resp. <target|rho|target>.
double fidelity(const PureState& state, const PureState& target);
double fidelity(const DensityMatrix& state, const PureState& target);

// Trace out the boson mode; the result lives on the spin-only space
// (same encoding, fock_cutoff = 0).
DensityMatrix partial_trace_boson(const DensityMatrix& rho);

// Fidelity of the reduced spin state against a spin-only target:
// sum_q |<target ⊗ q|psi>|^2, resp. <target|Tr_boson(rho)|target>.
double reduced_spin_fidelity(const PureState& state, const PureState& spin_target);
double reduced_spin_fidelity(const DensityMatrix& state, const PureState& spin_target);

}  // namespace dicke
