#pragma once

// Distance oracles rho(x, .) for variety specifications.
//
// All minimizations realify C^m to R^(2m); the Hermitian norm equals the
// Euclidean norm of the realification. Results are upper bounds on the true
// distance, certified only for finite sets, affine-linear forms and the
// brute-force oracle. For smooth forms the foot point is first-order
// stationary to the reported tolerance.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "regsep/variety/spec.hpp"

namespace regsep::variety {

struct DistanceOptions {
    int multistarts = 16;           // graph/parametric: projection start + perturbed
    int implicit_multistarts = 4;   // implicit: query, base point + perturbed
    int max_iterations = 200;
    double gradient_tolerance = 1e-10;
    double stationarity_tolerance = 1e-8;
    std::vector<double> penalty_weights = {1e2, 1e4, 1e6, 1e8, 1e10};
    int polish_iterations = 80;
    double feasibility_tolerance = 1e-12;
    std::uint64_t seed = 2026;
};

struct DistanceResult {
    double distance = 0.0;
    Eigen::VectorXcd foot_point;
    std::string method;
    bool certified = false;
    bool converged = true;
    double residual = 0.0;      // defining residual at the foot point
    double stationarity = 0.0;  // relative first-order criterion at the foot
};

// Dispatches on the spec form: exact scan (finite), exact orthogonal
// projection (affine-linear forms), damped Gauss-Newton with multistart
// (graph/parametric), quadratic-penalty continuation with feasibility
// polish (implicit). Intersections reduce to concatenated implicit
// equations or to finite candidate filtering; other combinations throw.
DistanceResult distance(const VarietySpec& spec, const Eigen::VectorXcd& x,
                        const DistanceOptions& options = {});

// Reference oracle for graph/parametric/finite forms: deterministic Halton
// sweep of the real parameter ball of the given radius followed by a
// derivative-free pattern-search refinement. Independent of the
// Gauss-Newton path; `samples` must be at least 1000.
DistanceResult distance_bruteforce(const VarietySpec& spec, const Eigen::VectorXcd& x,
                                   double radius, int samples);

}  // namespace regsep::variety
