#include "dicke/operators.hpp"

#include <cmath>

namespace dicke {

namespace {

void require_qubits(const HilbertSpace& space, const char* what) {
    if (space.encoding() != SpinEncoding::Qubits) {
        throw ConfigError("space", std::string(what) + " requires the qubit encoding");
    }
}

void require_spin_index(const HilbertSpace& space, int j) {
    if (j < 1 || j > space.n_spins()) {
        throw ConfigError("spin_index", "spin index " + std::to_string(j) +
                                            " out of range 1.." + std::to_string(space.n_spins()));
    }
}

}  // namespace

Operator::Operator(HilbertSpace space, Eigen::MatrixXcd matrix)
    : space_(space), mat_(std::move(matrix)) {
    if (mat_.rows() != space_.dim() || mat_.cols() != space_.dim()) {
        throw ConfigError("operator", "matrix size does not match space dimension " +
                                          std::to_string(space_.dim()));
    }
}

PureState Operator::apply(const PureState& psi) const {
    if (!(psi.space() == space_)) {
        throw ConfigError("space", "operator and state live on different spaces");
    }
    Eigen::VectorXcd out = mat_ * psi.amplitudes();
    const double n = out.norm();
    if (n == 0.0) {
        throw ConfigError("state", "operator annihilates the state; no normalized result");
    }
    return PureState(space_, out / n);
}

Operator identity_op(const HilbertSpace& space) {
    return Operator(space, Eigen::MatrixXcd::Identity(space.dim(), space.dim()));
}

Operator boson_annihilation(const HilbertSpace& space) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int s = 0; s < space.spin_dim(); ++s) {
        for (int q = 1; q <= space.fock_cutoff(); ++q) {
            m(space.flat_index(s, q - 1), space.flat_index(s, q)) = std::sqrt(double(q));
        }
    }
    return Operator(space, std::move(m));
}

Operator boson_creation(const HilbertSpace& space) { return boson_annihilation(space).adjoint(); }

Operator boson_number(const HilbertSpace& space) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int s = 0; s < space.spin_dim(); ++s) {
        for (int q = 0; q <= space.fock_cutoff(); ++q) {
            m(space.flat_index(s, q), space.flat_index(s, q)) = double(q);
        }
    }
    return Operator(space, std::move(m));
}

Operator spin_raise(const HilbertSpace& space, int j) {
    require_qubits(space, "spin_raise");
    require_spin_index(space, j);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int s = 0; s < space.spin_dim(); ++s) {
        if (space.spin_bit(s, j) != 0) continue;
        const int raised = space.set_spin_bit(s, j, 1);
        for (int q = 0; q < space.fock_dim(); ++q) {
            m(space.flat_index(raised, q), space.flat_index(s, q)) = 1.0;
        }
    }
    return Operator(space, std::move(m));
}

Operator spin_lower(const HilbertSpace& space, int j) { return spin_raise(space, j).adjoint(); }

Operator plus_projector(const HilbertSpace& space, int j) {
    require_qubits(space, "plus_projector");
    require_spin_index(space, j);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int s = 0; s < space.spin_dim(); ++s) {
        if (space.spin_bit(s, j) != 1) continue;
        for (int q = 0; q < space.fock_dim(); ++q) {
            const int idx = space.flat_index(s, q);
            m(idx, idx) = 1.0;
        }
    }
    return Operator(space, std::move(m));
}

Operator spin_sigma_x(const HilbertSpace& space, int j) {
    const Operator up = spin_raise(space, j);
    return Operator(space, up.matrix() + up.matrix().adjoint());
}

Operator spin_sigma_z(const HilbertSpace& space, int j) {
    require_qubits(space, "spin_sigma_z");
    require_spin_index(space, j);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int s = 0; s < space.spin_dim(); ++s) {
        const double sign = space.spin_bit(s, j) ? 1.0 : -1.0;
        for (int q = 0; q < space.fock_dim(); ++q) {
            const int idx = space.flat_index(s, q);
            m(idx, idx) = sign;
        }
    }
    return Operator(space, std::move(m));
}

Operator spin_swap(const HilbertSpace& space, int i, int j) {
    require_qubits(space, "spin_swap");
    require_spin_index(space, i);
    require_spin_index(space, j);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int s = 0; s < space.spin_dim(); ++s) {
        const int bi = space.spin_bit(s, i);
        const int bj = space.spin_bit(s, j);
        const int swapped = space.set_spin_bit(space.set_spin_bit(s, i, bj), j, bi);
        for (int q = 0; q < space.fock_dim(); ++q) {
            m(space.flat_index(swapped, q), space.flat_index(s, q)) = 1.0;
        }
    }
    return Operator(space, std::move(m));
}

Operator collective_raise(const HilbertSpace& space) {
    if (space.encoding() == SpinEncoding::Qubits) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
        for (int j = 1; j <= space.n_spins(); ++j) m += spin_raise(space, j).matrix();
        return Operator(space, std::move(m));
    }
    // Symmetric sector: S+ |D_n^(k)> = sqrt((k+1)(n-k)) |D_n^(k+1)>.
    const int n = space.n_spins();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int k = 0; k < n; ++k) {
        const double g = std::sqrt(double(k + 1) * double(n - k));
        for (int q = 0; q < space.fock_dim(); ++q) {
            m(space.flat_index(k + 1, q), space.flat_index(k, q)) = g;
        }
    }
    return Operator(space, std::move(m));
}

Operator collective_lower(const HilbertSpace& space) { return collective_raise(space).adjoint(); }

Operator excitation_weight(const HilbertSpace& space) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int s = 0; s < space.spin_dim(); ++s) {
        const double k = space.spin_excitations(s);
        for (int q = 0; q < space.fock_dim(); ++q) {
            const int idx = space.flat_index(s, q);
            m(idx, idx) = k;
        }
    }
    return Operator(space, std::move(m));
}

Operator total_excitation(const HilbertSpace& space) {
    return Operator(space, boson_number(space).matrix() + excitation_weight(space).matrix());
}

}  // namespace dicke
