#include "regsep/variety/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "regsep/util/rng.hpp"

namespace regsep::variety {

using algebra::Complex;
using algebra::Poly;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

std::span<const Complex> as_span(const VectorXcd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

VectorXd realify(const VectorXcd& z) {
    const int n = static_cast<int>(z.size());
    VectorXd out(2 * n);
    out.head(n) = z.real();
    out.tail(n) = z.imag();
    return out;
}

VectorXcd complexify(const VectorXd& v) {
    const int n = static_cast<int>(v.size()) / 2;
    VectorXcd out(n);
    out.real() = v.head(n);
    out.imag() = v.tail(n);
    return out;
}

// Realified Jacobian of a holomorphic map with complex Jacobian J:
// [[Re J, -Im J], [Im J, Re J]].
MatrixXd realify_jacobian(const MatrixXcd& j) {
    const int k = static_cast<int>(j.rows());
    const int n = static_cast<int>(j.cols());
    MatrixXd out(2 * k, 2 * n);
    out.topLeftCorner(k, n) = j.real();
    out.topRightCorner(k, n) = -j.imag();
    out.bottomLeftCorner(k, n) = j.imag();
    out.bottomRightCorner(k, n) = j.real();
    return out;
}

// A polynomial map C^n -> C^k with its exact Jacobian.
struct PolyMap {
    int domain = 0;
    std::vector<Poly> components;
    std::vector<std::vector<Poly>> partials;  // [component][variable]

    explicit PolyMap(std::vector<Poly> comps) : components(std::move(comps)) {
        domain = components.empty() ? 0 : components.front().num_vars();
        partials.reserve(components.size());
        for (const Poly& c : components) {
            std::vector<Poly> row;
            row.reserve(domain);
            for (int v = 0; v < domain; ++v) row.push_back(partial_derivative(c, v));
            partials.push_back(std::move(row));
        }
    }

    int codomain() const { return static_cast<int>(components.size()); }

    VectorXcd eval(const VectorXcd& t) const {
        VectorXcd out(codomain());
        for (int i = 0; i < codomain(); ++i) out[i] = components[i].eval(as_span(t));
        return out;
    }

    MatrixXcd jacobian(const VectorXcd& t) const {
        MatrixXcd out(codomain(), domain);
        for (int i = 0; i < codomain(); ++i)
            for (int v = 0; v < domain; ++v) out(i, v) = partials[i][v].eval(as_span(t));
        return out;
    }
};

struct GaussNewtonOutcome {
    VectorXcd argument;
    double objective = std::numeric_limits<double>::infinity();  // ||residual||
    bool converged = false;
};

// Damped Gauss-Newton on ||residual(t)||^2 over the realified parameters.
// `residual` and `jacobian` are complex; damping is backtracking halving.
template <typename ResidualFn, typename JacobianFn>
GaussNewtonOutcome gauss_newton(const VectorXcd& start, ResidualFn&& residual,
                                JacobianFn&& jacobian, const DistanceOptions& opt) {
    GaussNewtonOutcome out;
    VectorXd t = realify(start);
    VectorXd r = realify(residual(complexify(t)));
    double f = r.squaredNorm();

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        const MatrixXd j = realify_jacobian(jacobian(complexify(t)));
        const VectorXd grad = j.transpose() * r;
        if (grad.norm() < opt.gradient_tolerance * std::max(1.0, std::sqrt(f))) {
            out.converged = true;
            break;
        }
        const VectorXd step = j.colPivHouseholderQr().solve(-r);
        if (!step.allFinite()) break;

        double lambda = 1.0;
        bool accepted = false;
        while (lambda > 1e-12) {
            const VectorXd t_new = t + lambda * step;
            const VectorXd r_new = realify(residual(complexify(t_new)));
            const double f_new = r_new.squaredNorm();
            if (f_new < f) {
                t = t_new;
                r = r_new;
                f = f_new;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) break;
        if (lambda * step.norm() < 1e-15 * (1.0 + t.norm())) {
            out.converged = true;
            break;
        }
    }
    out.argument = complexify(t);
    out.objective = std::sqrt(f);
    return out;
}

// ---------------------------------------------------------------------------
// Linear fast paths (exact orthogonal projection).

bool all_degree_at_most_one(const std::vector<Poly>& polys) {
    for (const Poly& p : polys)
        if (p.degree() > 1) return false;
    return true;
}

// Splits degree <= 1 polynomials into constants and linear coefficients.
void linear_parts(const std::vector<Poly>& polys, int num_vars, MatrixXcd& linear, VectorXcd& constant) {
    const int k = static_cast<int>(polys.size());
    linear = MatrixXcd::Zero(k, num_vars);
    constant = VectorXcd::Zero(k);
    for (int i = 0; i < k; ++i) {
        for (const algebra::Term& t : polys[i].terms()) {
            const int deg = algebra::total_degree(t.alpha);
            if (deg == 0) {
                constant[i] = t.coef;
            } else {
                for (int v = 0; v < num_vars; ++v)
                    if (t.alpha[v] == 1) linear(i, v) = t.coef;
            }
        }
    }
}

DistanceResult project_onto_affine_solution_set(const MatrixXcd& linear, const VectorXcd& rhs,
                                                const VectorXcd& x) {
    // Nearest point of {y : linear * y = rhs} to x; the system is consistent
    // because the spec's base point satisfies it.
    const VectorXcd correction =
        linear.completeOrthogonalDecomposition().solve(linear * x - rhs);
    DistanceResult res;
    res.foot_point = x - correction;
    res.distance = correction.norm();
    res.method = "linear-projection";
    res.certified = true;
    res.converged = true;
    res.residual = (linear * res.foot_point - rhs).norm();
    return res;
}

DistanceResult project_onto_affine_image(const MatrixXcd& span, const VectorXcd& origin,
                                         const VectorXcd& x) {
    // Nearest point of {origin + span * t} to x.
    const VectorXcd t = span.completeOrthogonalDecomposition().solve(x - origin);
    DistanceResult res;
    res.foot_point = origin + span * t;
    res.distance = (x - res.foot_point).norm();
    res.method = "linear-projection";
    res.certified = true;
    res.converged = true;
    return res;
}

// ---------------------------------------------------------------------------
// Form-specific oracles.

DistanceResult distance_finite(const FiniteForm& form, const VectorXcd& x) {
    DistanceResult res;
    res.method = "finite";
    res.certified = true;
    res.converged = true;
    res.distance = std::numeric_limits<double>::infinity();
    for (const auto& pt : form.points) {
        const double d = (x - pt).norm();
        if (d < res.distance) {
            res.distance = d;
            res.foot_point = pt;
        }
    }
    return res;
}

PolyMap graph_map(const VarietySpec& spec) {
    const auto& g = std::get<GraphForm>(spec.form());
    const int p = g.param_dim;
    std::vector<Poly> comps;
    comps.reserve(spec.ambient_dim());
    for (int i = 0; i < p; ++i)
        comps.push_back(Poly::variable(p, i) + Poly::constant(p, spec.base_point()[i]));
    for (std::size_t j = 0; j < g.components.size(); ++j)
        comps.push_back(g.components[j] +
                        Poly::constant(p, spec.base_point()[p + static_cast<int>(j)]));
    return PolyMap(std::move(comps));
}

PolyMap parametric_map(const VarietySpec& spec) {
    return PolyMap(std::get<ParametricForm>(spec.form()).map);
}

DistanceResult distance_parameterized(const VarietySpec& spec, const VectorXcd& x,
                                      const DistanceOptions& opt) {
    const bool graph = spec.is_graph();
    const PolyMap map = graph ? graph_map(spec) : parametric_map(spec);
    const int p = map.domain;

    // Exact projection for affine-linear images.
    if (std::all_of(map.components.begin(), map.components.end(),
                    [](const Poly& c) { return c.degree() <= 1; })) {
        MatrixXcd linear;
        VectorXcd constant;
        linear_parts(map.components, p, linear, constant);
        return project_onto_affine_image(linear, constant, x);
    }

    VectorXcd base_guess;
    if (graph) {
        base_guess = (x - spec.base_point()).head(p);
    } else {
        base_guess = VectorXcd::Zero(p);
    }

    util::Rng rng(util::derive_seed(opt.seed, 0x9a7a));
    const double scale = std::max((x - spec.base_point()).norm(), 1e-3);

    auto residual = [&](const VectorXcd& t) { return VectorXcd(map.eval(t) - x); };
    auto jac = [&](const VectorXcd& t) { return map.jacobian(t); };

    DistanceResult res;
    res.method = "gauss-newton";
    res.distance = std::numeric_limits<double>::infinity();
    res.converged = false;
    VectorXcd best_t;
    for (int s = 0; s < std::max(1, opt.multistarts); ++s) {
        VectorXcd t0 = base_guess;
        if (s > 0) t0 += scale * rng.complex_gaussian_vector(p);
        const GaussNewtonOutcome run = gauss_newton(t0, residual, jac, opt);
        if (run.objective < res.distance) {
            res.distance = run.objective;
            best_t = run.argument;
            res.converged = run.converged;
        }
    }
    res.foot_point = map.eval(best_t);
    res.distance = (x - res.foot_point).norm();
    const MatrixXd j = realify_jacobian(map.jacobian(best_t));
    const VectorXd grad = j.transpose() * realify(res.foot_point - x);
    res.stationarity = grad.norm() / std::max(1.0, res.distance);
    if (res.stationarity < opt.stationarity_tolerance) res.converged = true;
    return res;
}

DistanceResult distance_implicit(const std::vector<Poly>& equations, const VectorXcd& x0,
                                 const VectorXcd& x, const DistanceOptions& opt) {
    const int m = static_cast<int>(x.size());
    const PolyMap system(equations);

    if (all_degree_at_most_one(equations)) {
        MatrixXcd linear;
        VectorXcd constant;
        linear_parts(equations, m, linear, constant);
        return project_onto_affine_solution_set(linear, -constant, x);
    }

    util::Rng rng(util::derive_seed(opt.seed, 0xf00d));
    const double scale = std::max((x - x0).norm(), 1e-6);
    const double feas_target = opt.feasibility_tolerance * std::max(1.0, x.norm());

    auto equation_residual = [&](const VectorXcd& y) {
        return system.eval(y).cwiseAbs().maxCoeff();
    };

    DistanceResult res;
    res.method = "penalty-projection";
    res.distance = std::numeric_limits<double>::infinity();
    res.converged = false;

    const int starts = std::max(1, opt.implicit_multistarts);
    for (int s = 0; s < starts; ++s) {
        VectorXcd y;
        switch (s) {
            case 0: y = x; break;
            case 1: y = x0; break;
            default: y = (s % 2 == 0 ? x : x0) + scale * rng.complex_gaussian_vector(m); break;
        }

        // Quadratic-penalty continuation, warm-started across weights.
        for (const double mu : opt.penalty_weights) {
            const double sqrt_mu = std::sqrt(mu);
            auto residual = [&](const VectorXcd& y_) {
                VectorXcd r(m + system.codomain());
                r.head(m) = y_ - x;
                r.tail(system.codomain()) = sqrt_mu * system.eval(y_);
                return r;
            };
            auto jac = [&](const VectorXcd& y_) {
                MatrixXcd j = MatrixXcd::Zero(m + system.codomain(), m);
                j.topRows(m) = MatrixXcd::Identity(m, m);
                j.bottomRows(system.codomain()) = sqrt_mu * system.jacobian(y_);
                return j;
            };
            y = gauss_newton(y, residual, jac, opt).argument;
        }

        // Feasibility polish: Gauss-Newton on the equations alone, taking the
        // minimum-norm correction so the foot point barely moves. On systems
        // with multiple roots the convergence is only linear and the foot
        // drifts by O(step), so iterate until the step is negligible against
        // the distance scale rather than until a residual threshold.
        for (int it = 0; it < opt.polish_iterations; ++it) {
            const VectorXcd f = system.eval(y);
            if (f.cwiseAbs().maxCoeff() == 0.0) break;
            const MatrixXd jr = realify_jacobian(system.jacobian(y));
            const VectorXd step = jr.completeOrthogonalDecomposition().solve(-realify(f));
            const double step_floor =
                std::max(1e-15 * (1.0 + y.norm()), 1e-9 * (x - y).norm());
            if (!step.allFinite() || step.norm() < step_floor) break;
            double lambda = 1.0;
            const double f_old = realify(f).squaredNorm();
            while (lambda > 1e-12) {
                const VectorXcd y_new = complexify(realify(y) + lambda * step);
                if (realify(system.eval(y_new)).squaredNorm() < f_old) {
                    y = y_new;
                    break;
                }
                lambda *= 0.5;
            }
            if (lambda <= 1e-12) break;
        }
        const bool feasible = equation_residual(y) < feas_target;

        const double d = (x - y).norm();
        const double resid = equation_residual(y);
        const bool better = (feasible && d < res.distance) ||
                            (!res.converged && (d < res.distance || feasible));
        if (better) {
            res.distance = d;
            res.foot_point = y;
            res.residual = resid;
            res.converged = feasible;
        }
    }

    // First-order check: the offset x - y should lie in the realified row
    // space of the equation Jacobian (normal space of the set).
    if (res.foot_point.size() == m) {
        const VectorXd g = realify(x - res.foot_point);
        if (g.norm() > 1e-300) {
            const MatrixXd jr = realify_jacobian(system.jacobian(res.foot_point));
            const MatrixXd jt = jr.transpose();
            const VectorXd lambda = jt.colPivHouseholderQr().solve(g);
            res.stationarity = (g - jt * lambda).norm() / g.norm();
        }
        if (res.stationarity > opt.stationarity_tolerance) res.converged = false;
    }
    return res;
}

DistanceResult distance_intersection(const VarietySpec& spec, const VectorXcd& x,
                                     const DistanceOptions& opt) {
    const auto& parts = std::get<IntersectionForm>(spec.form()).parts;
    // A finite part reduces the intersection to candidate filtering.
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!parts[i].is_finite()) continue;
        std::vector<VectorXcd> kept;
        for (const auto& pt : std::get<FiniteForm>(parts[i].form()).points) {
            bool in_all = true;
            for (std::size_t j = 0; j < parts.size() && in_all; ++j)
                if (j != i && !membership(parts[j], pt, 1e-8)) in_all = false;
            if (in_all) kept.push_back(pt);
        }
        DistanceResult res = distance_finite(FiniteForm{std::move(kept)}, x);
        res.method = "intersection-finite";
        return res;
    }
    auto eqs = implicit_equations(spec);
    if (eqs) return distance_implicit(*eqs, spec.base_point(), x, opt);
    throw Error("distance: unsupported intersection combination (" + spec.kind() + ")");
}

}  // namespace

DistanceResult distance(const VarietySpec& spec, const VectorXcd& x, const DistanceOptions& options) {
    if (x.size() != spec.ambient_dim()) throw DimensionError("distance: query dimension mismatch");

    if (spec.is_finite()) return distance_finite(std::get<FiniteForm>(spec.form()), x);
    if (spec.is_graph() || spec.is_parametric()) return distance_parameterized(spec, x, options);
    if (spec.is_implicit())
        return distance_implicit(std::get<ImplicitForm>(spec.form()).equations, spec.base_point(),
                                 x, options);
    return distance_intersection(spec, x, options);
}

DistanceResult distance_bruteforce(const VarietySpec& spec, const VectorXcd& x, double radius,
                                   int samples) {
    if (x.size() != spec.ambient_dim())
        throw DimensionError("distance_bruteforce: query dimension mismatch");
    if (spec.is_finite()) {
        DistanceResult res = distance_finite(std::get<FiniteForm>(spec.form()), x);
        res.method = "bruteforce";
        return res;
    }
    if (!(spec.is_graph() || spec.is_parametric()))
        throw Error("distance_bruteforce: unsupported form (" + spec.kind() + ")");
    if (samples < 1000) throw Error("distance_bruteforce: needs at least 1000 samples");
    if (radius <= 0.0) throw Error("distance_bruteforce: radius must be positive");

    const int p = spec.param_dim();
    const int d = 2 * p;
    static constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    if (d > 8) throw Error("distance_bruteforce: parameter dimension too large");

    auto point_at = [&](const VectorXd& t_real) {
        const VectorXcd t = complexify(t_real);
        return spec.is_graph() ? graph_point(spec, t) : parametric_point(spec, t);
    };
    auto objective = [&](const VectorXd& t_real) { return (x - point_at(t_real)).norm(); };

    // Deterministic low-discrepancy sweep of the parameter ball.
    VectorXd best = VectorXd::Zero(d);
    double best_f = objective(best);
    std::uint64_t index = 0;
    int accepted = 0;
    while (accepted < samples) {
        VectorXd t(d);
        for (int i = 0; i < d; ++i)
            t[i] = radius * (2.0 * util::halton(index, kPrimes[i]) - 1.0);
        ++index;
        if (t.norm() > radius) continue;
        ++accepted;
        const double f = objective(t);
        if (f < best_f) {
            best_f = f;
            best = t;
        }
    }

    // Derivative-free compass refinement at the best sample.
    double step = radius * std::pow(static_cast<double>(samples), -1.0 / d);
    const double step_floor = 1e-9 * std::max(radius, 1.0);
    int guard = 0;
    while (step > step_floor && guard++ < 400) {
        bool improved = false;
        for (int i = 0; i < d; ++i) {
            for (const double sgn : {1.0, -1.0}) {
                VectorXd trial = best;
                trial[i] += sgn * step;
                const double f = objective(trial);
                if (f < best_f) {
                    best_f = f;
                    best = trial;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }

    DistanceResult res;
    res.method = "bruteforce";
    res.certified = true;
    res.converged = true;
    res.foot_point = point_at(best);
    res.distance = (x - res.foot_point).norm();
    return res;
}

}  // namespace regsep::variety
