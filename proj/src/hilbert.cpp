#include "dicke/hilbert.hpp"

#include <bit>
#include <string>

namespace dicke {

HilbertSpace::HilbertSpace(SpinEncoding encoding, int n_spins, int fock_cutoff, int max_dim)
    : encoding_(encoding), n_spins_(n_spins), fock_cutoff_(fock_cutoff) {
    if (n_spins < 1) {
        throw ConfigError("n_spins", "n_spins must be at least 1, got " + std::to_string(n_spins));
    }
    if (fock_cutoff < 0) {
        throw ConfigError("fock_cutoff",
                          "fock_cutoff must be non-negative, got " + std::to_string(fock_cutoff));
    }
    if (encoding == SpinEncoding::Qubits) {
        if (n_spins >= 30) {
            throw ConfigError("n_spins", "n_spins too large for a dense representation");
        }
        spin_dim_ = 1 << n_spins;
    } else {
        spin_dim_ = n_spins + 1;
    }
    const long long dim = static_cast<long long>(spin_dim_) * (fock_cutoff + 1);
    if (dim > max_dim) {
        throw ConfigError("fock_cutoff", "space dimension " + std::to_string(dim) +
                                             " exceeds the dense-matrix bound " +
                                             std::to_string(max_dim));
    }
}

HilbertSpace HilbertSpace::qubits(int n_spins, int fock_cutoff, int max_dim) {
    return HilbertSpace(SpinEncoding::Qubits, n_spins, fock_cutoff, max_dim);
}

HilbertSpace HilbertSpace::symmetric(int n_spins, int fock_cutoff, int max_dim) {
    return HilbertSpace(SpinEncoding::SymmetricDicke, n_spins, fock_cutoff, max_dim);
}

int HilbertSpace::flat_index(int spin_state, int fock) const {
    return spin_state * fock_dim() + fock;
}

std::pair<int, int> HilbertSpace::split_index(int flat) const {
    return {flat / fock_dim(), flat % fock_dim()};
}

int HilbertSpace::spin_bit(int spin_state, int j) const {
    return (spin_state >> (n_spins_ - j)) & 1;
}

int HilbertSpace::set_spin_bit(int spin_state, int j, int value) const {
    const int mask = 1 << (n_spins_ - j);
    return value ? (spin_state | mask) : (spin_state & ~mask);
}

int HilbertSpace::spin_excitations(int spin_state) const {
    if (encoding_ == SpinEncoding::SymmetricDicke) return spin_state;
    return std::popcount(static_cast<unsigned>(spin_state));
}

HilbertSpace build_space(int n_spins, int fock_cutoff, int max_dim) {
    return HilbertSpace::qubits(n_spins, fock_cutoff, max_dim);
}

}  // namespace dicke
