#pragma once

// Hyperplanes through a base point of C^m and the angle metric on them.
//
// A hyperplane is represented by its base point and a Hermitian-unit normal;
// x belongs to the hyperplane iff <x - x0, v> = 0. The distance between two
// hyperplanes through the same point is the angle
//   angle(H, K) = arccos |<v, w>|  in [0, pi/2],
// which is invariant under unit-scalar rescaling of either normal.

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "regsep/util/error.hpp"
#include "regsep/util/json_convert.hpp"

namespace regsep::geometry {

class Hyperplane {
public:
    // Normalizes the normal on construction; requires ambient dimension >= 2
    // and a normal of nonnegligible length.
    Hyperplane(Eigen::VectorXcd base_point, Eigen::VectorXcd normal);

    int ambient_dim() const { return static_cast<int>(normal_.size()); }
    const Eigen::VectorXcd& base_point() const { return base_point_; }
    const Eigen::VectorXcd& normal() const { return normal_; }

    // Hermitian pairing <x - x0, v>; zero iff x lies on the hyperplane.
    std::complex<double> offset(const Eigen::VectorXcd& x) const;
    bool contains(const Eigen::VectorXcd& x, double tol = 1e-10) const;

    util::Json to_json() const;
    static Hyperplane from_json(const util::Json& j);

private:
    Eigen::VectorXcd base_point_;
    Eigen::VectorXcd normal_;
};

// Angle metric: arccos of the modulus of the Hermitian product of the unit
// normals, clamped to [0, pi/2]. Requires matching dimension and base point.
double angle(const Hyperplane& h, const Hyperplane& k);

// Unit normal drawn from the rotation-invariant distribution on the sphere
// of C^m (normalized complex Gaussian); deterministic per seed.
Hyperplane sample_generic_hyperplane(int ambient_dim, const Eigen::VectorXcd& base_point,
                                     std::uint64_t seed);

// The hyperplane through H0's base point containing y that minimizes the
// angle to H0. In coordinates adapted to H0 (base point at the origin,
// H0 = {x_m = 0}, y = (y_1, 0, ..., 0, y_m)) it is {x_m = q x_1} with
// q = y_m / y_1. When y is orthogonal to H0 every hyperplane through y
// attains the maximal angle pi/2; this tie is broken deterministically by
// orthogonalizing a fixed reference axis against y. Returns H0 when y
// already lies on it. Throws when y equals the base point.
Hyperplane min_angle_hyperplane_through(const Eigen::VectorXcd& y, const Hyperplane& h0);

// Outcome of the minimal-angle distance bound check, with witness values.
struct Lemma1Check {
    enum class Status { pass, fail, skip };
    Status status;
    std::string reason;      // populated for skip
    double lhs = 0.0;        // ||y1 - y0||
    double rhs = 0.0;        // 0.9 * tan(a) * ||y0 - x0||
    double min_angle = 0.0;  // angle(H0, min-angle hyperplane through y1)
};

// Checks ||y1 - y0|| >= 0.9 * tan(a) * ||y0 - x0|| for configurations that
// satisfy the bound's hypotheses: y0 on H0, ||y0 - y1|| < ||y0 - x0|| / 10,
// and the minimal angle of a hyperplane through y1 at least `a`. Unsatisfied
// hypotheses yield a skip, never a failure. Under the hypotheses the bound
// is guaranteed: the normal component of y1 - x0 is at most ||y1 - y0|| and
// its in-plane component exceeds 0.9 ||y0 - x0||, so the angle tangent pins
// ||y1 - y0|| from below.
Lemma1Check lemma1_bound_check(const Eigen::VectorXcd& y0, const Eigen::VectorXcd& y1,
                               const Hyperplane& h0, double a);

}  // namespace regsep::geometry
