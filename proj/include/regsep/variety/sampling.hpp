#pragma once

// On-variety sampling near the base point. Points are drawn so that their
// distances to the base point are log-uniform in [radius * 2^-J, radius];
// graph and parametric forms hit the target radius by a bracketed scalar
// solve along a random parameter direction, implicit forms project ambient
// Gaussian draws onto the set and filter by residual. Deterministic per
// seed, with per-sample derived seeds.

#include <cstdint>
#include <vector>

#include "regsep/variety/distance.hpp"
#include "regsep/variety/spec.hpp"

namespace regsep::variety {

struct SampleOptions {
    int shells = 14;                    // J: radii span [radius * 2^-J, radius]
    double residual_tolerance = 1e-9;   // on-set acceptance for projected samples
    int attempt_factor = 8;             // projection attempts per requested point
    DistanceOptions projection;
};

std::vector<Eigen::VectorXcd> sample_on_variety(const VarietySpec& spec, double radius, int count,
                                                std::uint64_t seed,
                                                const SampleOptions& options = {});

}  // namespace regsep::variety
