#include "dicke/states.hpp"

#include <cmath>
#include <string>

namespace dicke {

namespace {

void require_same_space(const HilbertSpace& a, const HilbertSpace& b) {
    if (!(a == b)) {
        throw ConfigError("space", "states live on different spaces (dim " +
                                       std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) +
                                       ")");
    }
}

double binomial(int n, int k) {
    double result = 1.0;
    for (int i = 0; i < k; ++i) result *= static_cast<double>(n - i) / (i + 1);
    return result;
}

}  // namespace

PureState::PureState(HilbertSpace space, Eigen::VectorXcd amplitudes)
    : space_(space), amp_(std::move(amplitudes)) {
    if (amp_.size() != space_.dim()) {
        throw ConfigError("state", "amplitude vector length " + std::to_string(amp_.size()) +
                                       " does not match space dimension " +
                                       std::to_string(space_.dim()));
    }
    if (norm_error() > kNormTolerance) {
        throw ConfigError("state", "state norm deviates from 1 by " + std::to_string(norm_error()));
    }
}

DensityMatrix::DensityMatrix(HilbertSpace space, Eigen::MatrixXcd elements)
    : space_(space), rho_(std::move(elements)) {
    if (rho_.rows() != space_.dim() || rho_.cols() != space_.dim()) {
        throw ConfigError("state", "density matrix size does not match space dimension " +
                                       std::to_string(space_.dim()));
    }
    if (hermiticity_error() > kNormTolerance) {
        throw ConfigError("state",
                          "density matrix is not Hermitian within " + std::to_string(kNormTolerance));
    }
    if (trace_error() > kTraceTolerance) {
        throw ConfigError("state", "density matrix trace deviates from 1 by " +
                                       std::to_string(trace_error()));
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

PureState basis_state(const HilbertSpace& space, int spin_state, int fock) {
    if (spin_state < 0 || spin_state >= space.spin_dim()) {
        throw ConfigError("spin_state", "spin configuration index out of range");
    }
    if (fock < 0 || fock > space.fock_cutoff()) {
        throw ConfigError("fock", "Fock index " + std::to_string(fock) + " exceeds the cutoff " +
                                      std::to_string(space.fock_cutoff()));
    }
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(space.dim());
    amp(space.flat_index(spin_state, fock)) = 1.0;
    return PureState(space, std::move(amp));
}

PureState dicke_state(int n, int m) {
    if (m < 0 || m > n) {
        throw ConfigError("m", "Dicke excitation count must satisfy 0 <= m <= n, got m = " +
                                   std::to_string(m) + " for n = " + std::to_string(n));
    }
    const HilbertSpace space = HilbertSpace::qubits(n, 0);
    const double amp = 1.0 / std::sqrt(binomial(n, m));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
    for (int s = 0; s < space.spin_dim(); ++s) {
        if (space.spin_excitations(s) == m) v(s) = amp;
    }
    return PureState(space, std::move(v));
}

PureState tensor_with_fock(const PureState& spin_state, int fock, const HilbertSpace& target) {
    const HilbertSpace& src = spin_state.space();
    if (src.fock_cutoff() != 0 || src.encoding() != target.encoding() ||
        src.n_spins() != target.n_spins()) {
        throw ConfigError("space", "tensor_with_fock expects a spin-only state matching the target");
    }
    if (fock < 0 || fock > target.fock_cutoff()) {
        throw ConfigError("fock", "Fock index exceeds the target cutoff");
    }
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(target.dim());
    for (int s = 0; s < target.spin_dim(); ++s) {
        amp(target.flat_index(s, fock)) = spin_state.amplitudes()(s);
    }
    return PureState(target, std::move(amp));
}

std::vector<PureState> symmetric_subspace_basis(int n, int total_excitations, int fock_cutoff) {
    if (fock_cutoff < total_excitations) {
        throw ConfigError("fock_cutoff", "cutoff " + std::to_string(fock_cutoff) +
                                             " cannot hold " + std::to_string(total_excitations) +
                                             " boson quanta");
    }
    const HilbertSpace space = HilbertSpace::qubits(n, fock_cutoff);
    std::vector<PureState> chain;
    const int top = std::min(n, total_excitations);
    chain.reserve(top + 1);
    for (int k = 0; k <= top; ++k) {
        chain.push_back(tensor_with_fock(dicke_state(n, k), total_excitations - k, space));
    }
    return chain;
}

double fidelity(const PureState& state, const PureState& target) {
    require_same_space(state.space(), target.space());
    return std::norm(target.amplitudes().dot(state.amplitudes()));
}

double fidelity(const DensityMatrix& state, const PureState& target) {
    require_same_space(state.space(), target.space());
    const Complex value = target.amplitudes().dot(state.elements() * target.amplitudes());
    return value.real();
}

DensityMatrix partial_trace_boson(const DensityMatrix& rho) {
    const HilbertSpace& space = rho.space();
    const HilbertSpace spin_space = space.encoding() == SpinEncoding::Qubits
                                        ? HilbertSpace::qubits(space.n_spins(), 0)
                                        : HilbertSpace::symmetric(space.n_spins(), 0);
    const int fdim = space.fock_dim();
    Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(space.spin_dim(), space.spin_dim());
    for (int s = 0; s < space.spin_dim(); ++s) {
        for (int t = 0; t < space.spin_dim(); ++t) {
            Complex sum = 0.0;
            for (int q = 0; q < fdim; ++q) {
                sum += rho.elements()(space.flat_index(s, q), space.flat_index(t, q));
            }
            reduced(s, t) = sum;
        }
    }
    return DensityMatrix(spin_space, std::move(reduced));
}

double reduced_spin_fidelity(const PureState& state, const PureState& spin_target) {
    const HilbertSpace& space = state.space();
    if (spin_target.space().n_spins() != space.n_spins() ||
        spin_target.space().encoding() != space.encoding() ||
        spin_target.space().fock_cutoff() != 0) {
        throw ConfigError("space", "reduced_spin_fidelity expects a spin-only target");
    }
    double total = 0.0;
    for (int q = 0; q < space.fock_dim(); ++q) {
        Complex overlap = 0.0;
        for (int s = 0; s < space.spin_dim(); ++s) {
            overlap += std::conj(spin_target.amplitudes()(s)) *
                       state.amplitudes()(space.flat_index(s, q));
        }
        total += std::norm(overlap);
    }
    return total;
}

double reduced_spin_fidelity(const DensityMatrix& state, const PureState& spin_target) {
    return fidelity(partial_trace_boson(state), spin_target);
}

}  // namespace dicke
