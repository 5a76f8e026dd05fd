#include "regsep/harness/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "regsep/geometry/frame.hpp"
#include "regsep/tangency/tangency.hpp"
#include "regsep/util/rng.hpp"

namespace regsep::harness {

using Eigen::VectorXcd;
using geometry::Frame;
using geometry::Hyperplane;
using lojasiewicz::CollectOptions;
using lojasiewicz::ExponentEstimate;
using lojasiewicz::Mode;
using variety::VarietySpec;

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

util::Json options_json(const CollectOptions& o) {
    return {{"radius", o.radius},
            {"shells", o.shells},
            {"per_shell", o.per_shell},
            {"mode", o.mode == Mode::one_sided ? "one_sided" : "two_sided"}};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return std::numeric_limits<double>::quiet_NaN();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ExponentEstimate run_estimate(const VarietySpec& x, const VarietySpec& y, const VectorXcd& x0,
                              const CollectOptions& options, std::uint64_t seed) {
    return lojasiewicz::estimate_exponent(lojasiewicz::collect_samples(x, y, x0, options, seed));
}

}  // namespace

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skip: return "skip";
        default: return "error";
    }
}

util::Json CheckRecord::to_json() const {
    util::Json j;
    j["type"] = type;
    j["status"] = to_string(status);
    if (!message.empty()) j["message"] = message;
    j["inputs"] = inputs;
    j["results"] = results;
    j["tolerances"] = tolerances;
    j["seed"] = seed;
    j["duration_ms"] = duration_ms;
    return j;
}

CheckRecord check_estimate(const VarietySpec& x_set, const VarietySpec& y_set,
                           const VectorXcd& x0, const CollectOptions& options,
                           const EstimateCheckParams& params,
                           const std::vector<std::uint64_t>& replication_seeds,
                           std::uint64_t seed) {
    Stopwatch timer;
    CheckRecord rec;
    rec.type = "estimate";
    rec.seed = seed;
    CollectOptions opt = options;
    opt.mode = params.mode;
    rec.inputs = {{"X", x_set.to_json()}, {"Y", y_set.to_json()}, {"estimator", options_json(opt)}};
    if (params.expect_nu)
        rec.tolerances = {{"expect_nu", {params.expect_nu->first, params.expect_nu->second}}};

    const ExponentEstimate est = run_estimate(x_set, y_set, x0, opt, seed);
    rec.results["estimate"] = est.to_json();

    if (!replication_seeds.empty()) {
        util::Json reps = util::Json::array();
        double lo = est.nu_hat.value_or(0.0), hi = lo;
        for (const std::uint64_t s : replication_seeds) {
            const ExponentEstimate rep = run_estimate(x_set, y_set, x0, opt, s);
            if (rep.nu_hat) {
                lo = std::min(lo, *rep.nu_hat);
                hi = std::max(hi, *rep.nu_hat);
            }
            reps.push_back({{"seed", s}, {"nu_hat", rep.nu_hat ? util::Json(*rep.nu_hat) : util::Json()}});
        }
        rec.results["replications"] = std::move(reps);
        rec.results["nu_spread"] = hi - lo;
    }

    if (est.degenerate) {
        rec.status = CheckStatus::error;
        rec.message = "degenerate estimate: " + est.degenerate_reason;
    } else if (params.expect_nu) {
        const bool ok = *est.nu_hat >= params.expect_nu->first &&
                        *est.nu_hat <= params.expect_nu->second;
        rec.status = ok ? CheckStatus::pass : CheckStatus::fail;
    } else {
        rec.status = CheckStatus::pass;
    }
    rec.duration_ms = timer.elapsed_ms();
    return rec;
}

CheckRecord check_section_monotonicity(const VarietySpec& x_set, const VarietySpec& y_set,
                                       const VectorXcd& x0, const CollectOptions& options,
                                       const SectionMonotonicityParams& params,
                                       std::uint64_t seed) {
    Stopwatch timer;
    CheckRecord rec;
    rec.type = "section_monotonicity";
    rec.seed = seed;
    rec.inputs = {{"X", x_set.to_json()}, {"Y", y_set.to_json()},
                  {"estimator", options_json(options)}, {"trials", params.trials}};
    rec.tolerances = {{"tol_section", params.tol_section},
                      {"pass_fraction", params.pass_fraction},
                      {"ambient_floor", 0.9}};

    const ExponentEstimate ambient = run_estimate(x_set, y_set, x0, options,
                                                  util::derive_seed(seed, 0));
    rec.results["ambient"] = ambient.to_json();
    if (ambient.degenerate) {
        rec.status = CheckStatus::error;
        rec.message = "ambient estimate degenerate: " + ambient.degenerate_reason;
        rec.duration_ms = timer.elapsed_ms();
        return rec;
    }
    if (*ambient.nu_hat < 0.9) {
        rec.status = CheckStatus::error;
        rec.message = "ambient estimate below the unit floor";
        rec.duration_ms = timer.elapsed_ms();
        return rec;
    }
    const double nu_ambient = *ambient.nu_hat;

    util::Json trials = util::Json::array();
    std::vector<double> sectioned;
    int pass_count = 0;
    int degenerate_count = 0;
    for (int t = 0; t < params.trials; ++t) {
        util::Json trial;
        trial["trial"] = t;
        try {
            const Hyperplane h = geometry::sample_generic_hyperplane(
                x_set.ambient_dim(), x0, util::derive_seed(seed, 1000 + t));
            const Frame frame = geometry::orthonormal_frame(h, util::derive_seed(seed, 2000 + t));
            const VarietySpec xh = section(x_set, frame);
            const VarietySpec yh = section(y_set, frame);
            const VectorXcd origin = Eigen::VectorXcd::Zero(x_set.ambient_dim() - 1);
            const ExponentEstimate est =
                run_estimate(xh, yh, origin, options, util::derive_seed(seed, 3000 + t));
            if (est.degenerate) {
                ++degenerate_count;
                trial["degenerate"] = est.degenerate_reason;
            } else {
                const double nu = *est.nu_hat;
                sectioned.push_back(nu);
                const bool ok = nu <= nu_ambient + params.tol_section;
                pass_count += ok ? 1 : 0;
                trial["nu_section"] = nu;
                trial["satisfies_bound"] = ok;
            }
        } catch (const Error& e) {
            ++degenerate_count;
            trial["degenerate"] = e.what();
        }
        trials.push_back(std::move(trial));
    }

    const int valid = params.trials - degenerate_count;
    rec.results["trials"] = std::move(trials);
    rec.results["nu_ambient"] = nu_ambient;
    rec.results["pass_count"] = pass_count;
    rec.results["degenerate_count"] = degenerate_count;
    rec.results["valid_trials"] = valid;
    if (!sectioned.empty()) rec.results["median_nu_section"] = median(sectioned);
    const double fraction = valid > 0 ? static_cast<double>(pass_count) / valid : 0.0;
    rec.results["pass_fraction"] = fraction;
    rec.status = (valid > 0 && fraction >= params.pass_fraction) ? CheckStatus::pass
                                                                 : CheckStatus::fail;
    rec.duration_ms = timer.elapsed_ms();
    return rec;
}

CheckRecord check_distance_comparability(const VarietySpec& x_set, const VectorXcd& x0,
                                         const CollectOptions& options,
                                         const DistanceComparabilityParams& params,
                                         std::uint64_t seed) {
    Stopwatch timer;
    CheckRecord rec;
    rec.type = "distance_comparability";
    rec.seed = seed;
    const int trials = params.explicit_hyperplanes.empty()
                           ? params.trials
                           : static_cast<int>(params.explicit_hyperplanes.size());
    rec.inputs = {{"X", x_set.to_json()}, {"estimator", options_json(options)}, {"trials", trials}};
    rec.tolerances = {{"ratio_bound", params.ratio_bound},
                      {"min_growth_slope", params.min_growth_slope},
                      {"pass_fraction", params.pass_fraction}};

    const int m = x_set.ambient_dim();
    const double r_min = options.radius * std::pow(2.0, -options.shells);
    util::Json trial_rows = util::Json::array();
    int pass_count = 0;
    int skipped = 0;
    for (int t = 0; t < trials; ++t) {
        util::Json trial;
        trial["trial"] = t;
        try {
            const Hyperplane h =
                params.explicit_hyperplanes.empty()
                    ? geometry::sample_generic_hyperplane(m, x0, util::derive_seed(seed, 1000 + t))
                    : params.explicit_hyperplanes[t];
            const Frame frame = geometry::orthonormal_frame(h, util::derive_seed(seed, 2000 + t));
            const VarietySpec xh = section(x_set, frame);
            const algebra::AffineMap param = parametrization(frame);

            // Shell-wise maxima of rho(x, X∩H) / rho(x, X) over hyperplane samples.
            std::map<int, double> shell_max;
            int excluded = 0;
            const int total = options.per_shell * options.shells;
            for (int i = 0; i < total; ++i) {
                util::Rng rng(util::derive_seed(seed, 0xd15cULL + 10000 * t + i));
                const double radius = rng.log_uniform(r_min, options.radius);
                const VectorXcd tc = radius * rng.unit_vector(m - 1);
                const VectorXcd x = param(tc);
                const double rho_ambient = distance(x_set, x, options.oracle).distance;
                if (rho_ambient < 1e-12) {
                    ++excluded;
                    continue;
                }
                const double rho_section = distance(xh, tc, options.oracle).distance;
                const int shell = std::max(0, static_cast<int>(std::floor(
                                                  -std::log2(tc.norm() / options.radius))));
                const double ratio = rho_section / rho_ambient;
                auto [it, inserted] = shell_max.try_emplace(shell, ratio);
                if (!inserted) it->second = std::max(it->second, ratio);
            }
            if (shell_max.size() < 2) {
                ++skipped;
                trial["skipped"] = "fewer than two populated shells";
                trial_rows.push_back(std::move(trial));
                continue;
            }

            double c_max = 0.0, c_min = std::numeric_limits<double>::infinity();
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (const auto& [shell, c] : shell_max) {
                c_max = std::max(c_max, c);
                c_min = std::min(c_min, c);
                const double lx = std::log(options.radius) - (shell + 0.5) * std::log(2.0);
                const double ly = std::log(c);
                sx += lx;
                sy += ly;
                sxx += lx * lx;
                sxy += lx * ly;
            }
            const double n = static_cast<double>(shell_max.size());
            const double slope = (sxy - sx * sy / n) / (sxx - sx * sx / n);
            const double spread = c_max / c_min;
            const bool ok = spread <= params.ratio_bound && slope >= params.min_growth_slope;
            pass_count += ok ? 1 : 0;
            trial["ratio_spread"] = spread;
            trial["growth_slope"] = slope;
            trial["max_ratio"] = c_max;
            trial["excluded_samples"] = excluded;
            trial["pass"] = ok;
        } catch (const Error& e) {
            ++skipped;
            trial["skipped"] = e.what();
        }
        trial_rows.push_back(std::move(trial));
    }

    const int valid = trials - skipped;
    rec.results["trials"] = std::move(trial_rows);
    rec.results["pass_count"] = pass_count;
    rec.results["skipped"] = skipped;
    rec.results["valid_trials"] = valid;
    const double fraction = valid > 0 ? static_cast<double>(pass_count) / valid : 0.0;
    rec.results["pass_fraction"] = fraction;
    rec.status = (valid > 0 && fraction >= params.pass_fraction) ? CheckStatus::pass
                                                                 : CheckStatus::fail;
    rec.duration_ms = timer.elapsed_ms();
    return rec;
}

CheckRecord check_tangency_bound(const VarietySpec& x_set, const VarietySpec& y_set,
                                 const VectorXcd& x0, const CollectOptions& options,
                                 const TangencyBoundParams& params, std::uint64_t seed) {
    Stopwatch timer;
    CheckRecord rec;
    rec.type = "tangency";
    rec.seed = seed;
    rec.inputs = {{"X", x_set.to_json()}, {"Y", y_set.to_json()},
                  {"estimator", options_json(options)}, {"truncation", params.truncation}};
    rec.tolerances = {{"tol", params.tol}};

    if (!x_set.is_graph() || !y_set.is_graph())
        throw Error("check_tangency_bound: both sets must be graph forms");
    const auto& fx = std::get<variety::GraphForm>(x_set.form());
    const auto& fy = std::get<variety::GraphForm>(y_set.form());
    if (fx.param_dim != fy.param_dim)
        throw Error("check_tangency_bound: graphs must share the parameter space");

    const std::vector<algebra::Complex> center(fx.param_dim, algebra::Complex(0.0));
    const tangency::TangencyReport report =
        tangency::order_of_tangency(fx.components, fy.components, center, params.truncation);
    rec.results["tangency"] = report.to_json();

    if (!report.finite()) {
        rec.status = CheckStatus::skip;
        rec.message = "order of tangency exceeds the truncation degree";
        rec.duration_ms = timer.elapsed_ms();
        return rec;
    }

    const ExponentEstimate est = run_estimate(x_set, y_set, x0, options, seed);
    rec.results["estimate"] = est.to_json();
    if (est.degenerate) {
        rec.status = CheckStatus::error;
        rec.message = "degenerate estimate: " + est.degenerate_reason;
        rec.duration_ms = timer.elapsed_ms();
        return rec;
    }
    const double s = static_cast<double>(*report.s);
    const bool ok = s <= *est.nu_hat - 1.0 + params.tol;
    rec.results["s"] = *report.s;
    rec.results["nu_hat"] = *est.nu_hat;
    rec.status = ok ? CheckStatus::pass : CheckStatus::fail;
    rec.duration_ms = timer.elapsed_ms();
    return rec;
}

CheckRecord check_lemma1(int ambient_dim, const VectorXcd& x0, const Lemma1Params& params,
                         std::uint64_t seed) {
    Stopwatch timer;
    CheckRecord rec;
    rec.type = "lemma1";
    rec.seed = seed;
    rec.inputs = {{"ambient_dim", ambient_dim}, {"configurations", params.configurations},
                  {"angle", params.angle}};
    rec.tolerances = {{"bound_constant", 0.9}, {"required_failures", 0}};

    int passes = 0, fails = 0, skips = 0;
    const int max_attempts = params.configurations * params.max_attempts_factor;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < max_attempts && passes + fails < params.configurations;
         ++attempt) {
        util::Rng rng(util::derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        const Hyperplane h0 = geometry::sample_generic_hyperplane(
            ambient_dim, x0, util::derive_seed(seed, 0x51deULL + attempt));
        const Frame frame =
            geometry::orthonormal_frame(h0, util::derive_seed(seed, 0xf1a7ULL + attempt));

        // y0 on H0; y1 close to y0, with half of the draws perturbed purely
        // along the normal, where the minimal angle is largest.
        const double rho = rng.log_uniform(0.25, 1.0);
        const VectorXcd y0 = parametrization(frame)(rho * rng.unit_vector(ambient_dim - 1));
        const double offset = rng.log_uniform(1e-4, 0.0999) * (y0 - x0).norm();
        VectorXcd y1;
        if (attempt % 2 == 0) {
            const algebra::Complex phase = rng.unit_vector(1)[0];
            y1 = y0 + offset * phase * h0.normal();
        } else {
            y1 = y0 + offset * rng.unit_vector(ambient_dim);
        }

        const geometry::Lemma1Check check = geometry::lemma1_bound_check(y0, y1, h0, params.angle);
        switch (check.status) {
            case geometry::Lemma1Check::Status::pass:
                ++passes;
                worst_margin = std::min(worst_margin, check.lhs - check.rhs);
                break;
            case geometry::Lemma1Check::Status::fail:
                ++fails;
                worst_margin = std::min(worst_margin, check.lhs - check.rhs);
                break;
            default:
                ++skips;
                break;
        }
    }

    rec.results["passes"] = passes;
    rec.results["fails"] = fails;
    rec.results["skips"] = skips;
    rec.results["satisfied"] = passes + fails;
    if (std::isfinite(worst_margin)) rec.results["worst_margin"] = worst_margin;
    rec.status = (fails == 0) ? CheckStatus::pass : CheckStatus::fail;
    rec.duration_ms = timer.elapsed_ms();
    return rec;
}

CheckRecord check_modes_consistency(const VarietySpec& x_set, const VarietySpec& y_set,
                                    const VectorXcd& x0, const CollectOptions& options,
                                    const ModesConsistencyParams& params, std::uint64_t seed) {
    Stopwatch timer;
    CheckRecord rec;
    rec.type = "modes_consistency";
    rec.seed = seed;
    CollectOptions opt = options;
    opt.strategy = params.strategy;
    rec.inputs = {{"X", x_set.to_json()}, {"Y", y_set.to_json()}, {"estimator", options_json(opt)},
                  {"two_sided_strategy",
                   params.strategy == lojasiewicz::TwoSidedStrategy::isotropic ? "isotropic"
                                                                               : "near_variety"}};
    rec.tolerances = {{"gap_tolerance", params.gap_tolerance}, {"unit_floor", 0.9}};

    const lojasiewicz::ModesResult result =
        lojasiewicz::modes_consistency(x_set, y_set, x0, opt, seed);
    rec.results["one_sided"] = result.one_sided.to_json();
    rec.results["two_sided"] = result.two_sided.to_json();
    rec.results["gap"] = result.gap;
    rec.results["floor_satisfied"] = result.floor_satisfied;
    rec.status = (result.floor_satisfied && result.gap <= params.gap_tolerance)
                     ? CheckStatus::pass
                     : CheckStatus::fail;
    rec.duration_ms = timer.elapsed_ms();
    return rec;
}

}  // namespace regsep::harness
