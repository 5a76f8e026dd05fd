#include "regsep/variety/sampling.hpp"

#include <cmath>

#include "regsep/util/rng.hpp"

namespace regsep::variety {

using Eigen::VectorXcd;

namespace {

// Smallest tau in (0, hi] with ||phi(tau u) - x0|| = target, by geometric
// bracketing and bisection. Returns false when no bracket is found (the map
// may be degenerate along u).
template <typename PointFn>
bool solve_radius(PointFn&& point_at, const VectorXcd& u, const VectorXcd& x0, double target,
                  double& tau_out) {
    auto g = [&](double tau) { return (point_at(tau * u) - x0).norm() - target; };
    double hi = target;
    int doublings = 0;
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (++doublings > 60) return false;
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15 * (1.0 + hi)) break;
    }
    tau_out = hi;
    return true;
}

}  // namespace

std::vector<VectorXcd> sample_on_variety(const VarietySpec& spec, double radius, int count,
                                         std::uint64_t seed, const SampleOptions& options) {
    if (radius <= 0.0) throw Error("sample_on_variety: radius must be positive");
    if (count < 1) throw Error("sample_on_variety: count must be positive");
    const double r_min = radius * std::pow(2.0, -options.shells);

    if (spec.is_finite()) return std::get<FiniteForm>(spec.form()).points;

    std::vector<VectorXcd> out;
    out.reserve(count);

    if (spec.is_graph() || spec.is_parametric()) {
        const int p = spec.param_dim();
        auto point_at = [&](const VectorXcd& t) {
            return spec.is_graph() ? graph_point(spec, t) : parametric_point(spec, t);
        };
        int attempts = 0;
        const int max_attempts = count * options.attempt_factor;
        while (static_cast<int>(out.size()) < count && attempts < max_attempts) {
            util::Rng rng(util::derive_seed(seed, static_cast<std::uint64_t>(attempts++)));
            const VectorXcd u = rng.unit_vector(p);
            const double target = rng.log_uniform(r_min, radius);
            double tau = 0.0;
            if (!solve_radius(point_at, u, spec.base_point(), target, tau)) continue;
            out.push_back(point_at(tau * u));
        }
        if (static_cast<int>(out.size()) < count)
            throw Error("sample_on_variety: could not reach the requested radius along sampled directions");
        return out;
    }

    if (spec.is_implicit() || spec.is_intersection()) {
        const int m = spec.ambient_dim();
        int attempts = 0;
        const int max_attempts = count * options.attempt_factor;
        while (static_cast<int>(out.size()) < count && attempts < max_attempts) {
            util::Rng rng(util::derive_seed(seed, static_cast<std::uint64_t>(attempts++)));
            const double target = rng.log_uniform(r_min, radius);
            const VectorXcd z = spec.base_point() + target * rng.unit_vector(m);
            DistanceOptions proj = options.projection;
            proj.seed = util::derive_seed(seed, 0xabcdULL + attempts);
            const DistanceResult res = distance(spec, z, proj);
            if (res.residual > options.residual_tolerance) continue;
            if ((res.foot_point - spec.base_point()).norm() < 1e-3 * r_min) continue;  // collapsed to x0
            out.push_back(res.foot_point);
        }
        if (static_cast<int>(out.size()) < count)
            throw Error("sample_on_variety: projection failures beyond budget");
        return out;
    }

    throw Error("sample_on_variety: unsupported form (" + spec.kind() + ")");
}

}  // namespace regsep::variety
