#pragma once

// Orthonormal frames of a hyperplane and the induced isometric
// parametrization h(t) = x0 + sum_i t_i b_i from C^(m-1) onto it.

#include <cstdint>

#include "regsep/algebra/affine.hpp"
#include "regsep/geometry/hyperplane.hpp"

namespace regsep::geometry {

class Frame {
public:
    // `basis` columns must be pairwise Hermitian-orthonormal and orthogonal
    // to the hyperplane normal (checked to 1e-10).
    Frame(Hyperplane hyperplane, Eigen::MatrixXcd basis);

    const Hyperplane& hyperplane() const { return hyperplane_; }
    // m x (m-1), columns b_1..b_(m-1).
    const Eigen::MatrixXcd& basis() const { return basis_; }

private:
    Hyperplane hyperplane_;
    Eigen::MatrixXcd basis_;
};

// Gram-Schmidt over the normal's orthogonal complement, seeded and
// deterministic.
Frame orthonormal_frame(const Hyperplane& h, std::uint64_t seed);

// Affine map t -> x0 + sum_i t_i b_i; an isometry of C^(m-1) onto the
// hyperplane with parametrization(F)(0) = x0.
algebra::AffineMap parametrization(const Frame& f);

// Inverse of the parametrization on the hyperplane: coordinates of the
// orthogonal projection of x onto the hyperplane.
Eigen::VectorXcd hyperplane_coordinates(const Frame& f, const Eigen::VectorXcd& x);

}  // namespace regsep::geometry
