#pragma once

// Affine maps between complex coordinate spaces and polynomial pullback.

#include <Eigen/Dense>

#include "regsep/algebra/poly.hpp"

namespace regsep::algebra {

struct AffineMap {
    Eigen::MatrixXcd linear;       // codomain_dim x domain_dim
    Eigen::VectorXcd translation;  // codomain_dim

    AffineMap(Eigen::MatrixXcd linear_part, Eigen::VectorXcd translation_part);

    int domain_dim() const { return static_cast<int>(linear.cols()); }
    int codomain_dim() const { return static_cast<int>(linear.rows()); }

    Eigen::VectorXcd operator()(const Eigen::VectorXcd& t) const;

    static AffineMap identity(int dim);
    // t |-> t + offset.
    static AffineMap shift(const Eigen::VectorXcd& offset);
};

// Exact polynomial pullback: returns q with q(t) = p(a(t)) for all t.
Poly compose_affine(const Poly& p, const AffineMap& a);

}  // namespace regsep::algebra
