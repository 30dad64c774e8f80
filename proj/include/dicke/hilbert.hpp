// hilbert.hpp — layout of the composite spin ⊗ boson Hilbert space
#pragma once

#include <utility>

#include "dicke/errors.hpp"

namespace dicke {

// Dense density matrices above this dimension are rejected at construction.
inline constexpr int kDefaultMaxDim = 4096;

enum class SpinEncoding {
    // Every spin configuration of n qubits in the dressed basis {|->, |+>}.
    // Spin 1 is the most significant bit, so |+--> has configuration index 4.
    Qubits,
    // Permutation-symmetric sector only: one level per collective excitation
    // count k = 0..n, level k standing for the Dicke state |D_n^(k)>.
    SymmetricDicke,
};

// Composite space of a spin register and one truncated boson mode.
// The Fock index runs fastest: flat = spin_state * fock_dim + fock, so boson
// operators act inside contiguous blocks.
class HilbertSpace {
public:
    static HilbertSpace qubits(int n_spins, int fock_cutoff, int max_dim = kDefaultMaxDim);
    static HilbertSpace symmetric(int n_spins, int fock_cutoff, int max_dim = kDefaultMaxDim);

    int n_spins() const { return n_spins_; }
    int fock_cutoff() const { return fock_cutoff_; }
    SpinEncoding encoding() const { return encoding_; }

    int spin_dim() const { return spin_dim_; }
    int fock_dim() const { return fock_cutoff_ + 1; }
    int dim() const { return spin_dim_ * (fock_cutoff_ + 1); }

    int flat_index(int spin_state, int fock) const;
    std::pair<int, int> split_index(int flat) const;

    // Occupation of spin j (1-based) in a qubit configuration: 0 = |->, 1 = |+>.
    int spin_bit(int spin_state, int j) const;
    int set_spin_bit(int spin_state, int j, int value) const;
    // Number of |+> spins in a configuration (qubits) or the level index itself
    // (symmetric encoding).
    int spin_excitations(int spin_state) const;

    bool operator==(const HilbertSpace& other) const = default;

private:
    HilbertSpace(SpinEncoding encoding, int n_spins, int fock_cutoff, int max_dim);

    SpinEncoding encoding_;
    int n_spins_;
    int fock_cutoff_;
    int spin_dim_;
};

// Physical qubit register ⊗ boson mode.
HilbertSpace build_space(int n_spins, int fock_cutoff, int max_dim = kDefaultMaxDim);

}  // namespace dicke
