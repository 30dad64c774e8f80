// operators.hpp — dense operators on the composite space
#pragma once

#include <Eigen/Dense>

#include "dicke/hilbert.hpp"
#include "dicke/states.hpp"

namespace dicke {

// Dense operator tied to its space.
class Operator {
public:
    Operator(HilbertSpace space, Eigen::MatrixXcd matrix);

    const HilbertSpace& space() const { return space_; }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

    Operator adjoint() const { return Operator(space_, mat_.adjoint()); }
    bool is_hermitian(double tol = 1e-10) const {
        return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }

    PureState apply(const PureState& psi) const;

private:
    HilbertSpace space_;
    Eigen::MatrixXcd mat_;
};

Operator identity_op(const HilbertSpace& space);

// Boson mode operators: a|k> = sqrt(k)|k-1> on the Fock factor, identity on
// the spin factor; elements above the cutoff are truncated.
Operator boson_annihilation(const HilbertSpace& space);
Operator boson_creation(const HilbertSpace& space);
Operator boson_number(const HilbertSpace& space);

// Per-spin dressed-basis operators (qubit encoding only), j is 1-based.
Operator spin_raise(const HilbertSpace& space, int j);    // |+>_j <-|
Operator spin_lower(const HilbertSpace& space, int j);    // |->_j <+|
Operator plus_projector(const HilbertSpace& space, int j);  // |+>_j <+|
Operator spin_sigma_x(const HilbertSpace& space, int j);  // |+><-| + |-><+|
Operator spin_sigma_z(const HilbertSpace& space, int j);  // |+><+| - |-><-|
Operator spin_swap(const HilbertSpace& space, int i, int j);

// Collective operators, defined for both encodings.
Operator collective_raise(const HilbertSpace& space);       // sum_j |+>_j <-|
Operator collective_lower(const HilbertSpace& space);
Operator excitation_weight(const HilbertSpace& space);      // sum_j |+>_j <+|
Operator total_excitation(const HilbertSpace& space);       // a†a + excitation weight

}  // namespace dicke
