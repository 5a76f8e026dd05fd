#include "regsep/lojasiewicz/estimator.hpp"
#include "regsep/lojasiewicz/samples.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "regsep/util/rng.hpp"

namespace regsep::lojasiewicz {

using Eigen::VectorXcd;
using variety::DistanceResult;
using variety::VarietySpec;

namespace {

int shell_of(double d_xy, double radius) {
    const int shell = static_cast<int>(std::floor(-std::log2(d_xy / radius)));
    return std::max(shell, 0);
}

SeparationSample make_sample(const VectorXcd& x, std::optional<double> d_x, double d_y,
                             double d_xy, const CollectOptions& opt, CollectDiagnostics& diag) {
    SeparationSample s;
    s.x = x;
    s.d_X = d_x;
    s.d_Y = d_y;
    s.d_XY = d_xy;
    ++diag.generated;
    if (d_y < opt.drop_tolerance) ++diag.zero_d_y;
    if (d_xy < opt.drop_tolerance) {
        ++diag.dropped_small_dxy;
        s.shell_index = -1;
        return s;
    }
    const double floor_needed = std::max(d_x.value_or(0.0), d_y) - 1e-9;
    if (d_xy < floor_needed) {
        ++diag.dropped_inconsistent;
        s.shell_index = -1;
        return s;
    }
    s.shell_index = shell_of(d_xy, opt.radius);
    ++diag.kept;
    return s;
}

double separation_value(const SeparationSample& s, Mode mode) {
    return mode == Mode::one_sided ? s.d_Y : (s.d_X.value_or(0.0) + s.d_Y);
}

}  // namespace

SampleSet collect_samples(const VarietySpec& x_set, const VarietySpec& y_set,
                          const VectorXcd& x0, const CollectOptions& options, std::uint64_t seed) {
    if (options.radius <= 0.0) throw Error("collect_samples: radius must be positive");
    if (options.shells < 4) throw Error("collect_samples: shells must be at least 4");
    if (options.per_shell < 16) throw Error("collect_samples: per_shell must be at least 16");
    if (!membership(x_set, x0, 1e-9) || !membership(y_set, x0, 1e-9))
        throw Error("collect_samples: base point must lie on both sets");

    const VarietySpec xy = intersect(x_set, y_set);
    const int total = options.per_shell * options.shells;

    SampleSet out;
    out.mode = options.mode;
    out.radius = options.radius;
    out.shells = options.shells;
    out.per_shell = options.per_shell;
    out.diagnostics.requested = total;

    variety::SampleOptions sampling = options.sampling;
    sampling.shells = options.shells;
    sampling.projection = options.oracle;

    if (options.mode == Mode::one_sided) {
        const auto points = sample_on_variety(x_set, options.radius, total, seed, sampling);
        for (const auto& x : points) {
            const double d_y = distance(y_set, x, options.oracle).distance;
            const double d_xy = distance(xy, x, options.oracle).distance;
            out.samples.push_back(make_sample(x, std::nullopt, d_y, d_xy, options, out.diagnostics));
        }
    } else {
        const double r_min = options.radius * std::pow(2.0, -options.shells);
        const int m = x_set.ambient_dim();
        for (int i = 0; i < total; ++i) {
            util::Rng rng(util::derive_seed(seed, 0x2151dULL + static_cast<std::uint64_t>(i)));
            VectorXcd x;
            if (options.strategy == TwoSidedStrategy::isotropic) {
                x = x0 + rng.log_uniform(r_min, options.radius) * rng.unit_vector(m);
            } else {
                // Near-variety probes: a point of X or Y offset by a
                // log-uniform fraction of its radius.
                const VarietySpec& host = (i % 2 == 0) ? x_set : y_set;
                const auto pts = sample_on_variety(host, options.radius, 1,
                                                   util::derive_seed(seed, 0xa11ceULL + i), sampling);
                const double rho = (pts.front() - x0).norm();
                const double offset = rng.log_uniform(std::pow(2.0, -options.shells), 1.0) * rho;
                x = pts.front() + offset * rng.unit_vector(m);
            }
            const double d_x = distance(x_set, x, options.oracle).distance;
            const double d_y = distance(y_set, x, options.oracle).distance;
            const double d_xy = distance(xy, x, options.oracle).distance;
            out.samples.push_back(make_sample(x, d_x, d_y, d_xy, options, out.diagnostics));
        }
    }

    if (out.samples.empty()) throw Error("collect_samples: empty sample set after filtering");
    return out;
}

ExponentEstimate estimate_exponent(const SampleSet& samples, const FitOptions& options) {
    ExponentEstimate est;
    est.mode = samples.mode;

    const int raw = static_cast<int>(samples.samples.size());
    if (raw == 0) throw Error("estimate_exponent: no samples");

    // Degeneracy first: containment and intersection-saturation refusals.
    const auto& diag = samples.diagnostics;
    if (samples.mode == Mode::one_sided &&
        diag.zero_d_y > options.degenerate_fraction * raw) {
        est.degenerate = true;
        est.degenerate_reason = "local containment";
        return est;
    }
    if (diag.dropped_small_dxy > options.degenerate_fraction * raw) {
        est.degenerate = true;
        est.degenerate_reason = "probes collapse onto the intersection";
        return est;
    }

    std::map<int, ShellBin> bins;
    for (const SeparationSample& s : samples.samples) {
        if (s.shell_index < 0) continue;
        const double value = separation_value(s, samples.mode);
        if (value < 1e-300) continue;
        auto [it, inserted] = bins.try_emplace(s.shell_index);
        ShellBin& bin = it->second;
        if (inserted) {
            bin.shell = s.shell_index;
            bin.log_center = std::log(samples.radius) - (s.shell_index + 0.5) * std::log(2.0);
            bin.envelope = std::log(value);
        } else {
            bin.envelope = std::min(bin.envelope, std::log(value));
        }
        ++bin.count;
    }
    for (const auto& [shell, bin] : bins) est.bin_table.push_back(bin);

    // A shell with few samples puts its envelope far from the shell's lower
    // edge and flattens the fitted line, so require half the nominal
    // occupancy before a shell participates.
    const int occupancy = std::max(options.min_shell_count, samples.per_shell / 2);
    std::vector<const ShellBin*> populated;
    for (const ShellBin& bin : est.bin_table)
        if (bin.count >= occupancy) populated.push_back(&bin);
    if (populated.size() < 2) throw Error("estimate_exponent: insufficient populated shells");

    // Deepest ceil(J/2) populated shells approximate the germ limit.
    const int deepest = std::max(2, (samples.shells + 1) / 2);
    const int used = std::min<int>(deepest, static_cast<int>(populated.size()));
    const auto first = populated.end() - used;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (auto it = first; it != populated.end(); ++it) {
        sx += (*it)->log_center;
        sy += (*it)->envelope;
        sxx += (*it)->log_center * (*it)->log_center;
        sxy += (*it)->log_center * (*it)->envelope;
    }
    const double n = static_cast<double>(used);
    const double denom = sxx - sx * sx / n;
    if (std::abs(denom) < 1e-12) throw Error("estimate_exponent: shell centers are degenerate");
    const double slope = (sxy - sx * sy / n) / denom;
    const double intercept = (sy - slope * sx) / n;

    double rss = 0.0;
    for (auto it = first; it != populated.end(); ++it) {
        const double r = (*it)->envelope - (intercept + slope * (*it)->log_center);
        rss += r * r;
    }

    est.nu_hat = slope;
    est.c_hat = std::exp(intercept);
    est.fit_residual = std::sqrt(rss / n);
    est.shells_used = used;
    return est;
}

ViolationReport verify_separation(const SampleSet& samples, double nu, double c, int min_shell) {
    if (nu <= 0.0 || c <= 0.0) throw Error("verify_separation: nu and c must be positive");
    ViolationReport report;
    for (const SeparationSample& s : samples.samples) {
        if (s.shell_index < min_shell) continue;
        const double lhs = separation_value(s, samples.mode);
        const double rhs = c * std::pow(s.d_XY, nu);
        ++report.checked;
        if (lhs < rhs) ++report.violations;
        if (rhs > 0.0) report.worst_ratio = std::min(report.worst_ratio, lhs / rhs);
    }
    if (report.checked > 0)
        report.violation_fraction = static_cast<double>(report.violations) / report.checked;
    return report;
}

ModesResult modes_consistency(const VarietySpec& x_set, const VarietySpec& y_set,
                              const VectorXcd& x0, const CollectOptions& options,
                              std::uint64_t seed, const FitOptions& fit) {
    CollectOptions one = options;
    one.mode = Mode::one_sided;
    CollectOptions two = options;
    two.mode = Mode::two_sided;

    ModesResult res;
    res.one_sided = estimate_exponent(collect_samples(x_set, y_set, x0, one,
                                                      util::derive_seed(seed, 1)), fit);
    res.two_sided = estimate_exponent(collect_samples(x_set, y_set, x0, two,
                                                      util::derive_seed(seed, 2)), fit);
    if (res.one_sided.degenerate)
        throw Error("modes_consistency: one-sided estimate degenerate (" +
                    res.one_sided.degenerate_reason + ")");
    if (res.two_sided.degenerate)
        throw Error("modes_consistency: two-sided estimate degenerate (" +
                    res.two_sided.degenerate_reason + ")");
    res.gap = std::abs(*res.one_sided.nu_hat - *res.two_sided.nu_hat);
    res.floor_satisfied = *res.one_sided.nu_hat >= fit.unit_floor &&
                          *res.two_sided.nu_hat >= fit.unit_floor;
    return res;
}

util::Json SampleSet::to_json() const {
    util::Json j;
    j["mode"] = (mode == Mode::one_sided) ? "one_sided" : "two_sided";
    j["radius"] = radius;
    j["shells"] = shells;
    util::Json arr = util::Json::array();
    for (const SeparationSample& s : samples) {
        util::Json sj;
        sj["x"] = util::cvector_to_json(s.x);
        if (s.d_X) sj["d_X"] = *s.d_X;
        sj["d_Y"] = s.d_Y;
        sj["d_XY"] = s.d_XY;
        sj["shell"] = s.shell_index;
        arr.push_back(std::move(sj));
    }
    j["samples"] = std::move(arr);
    j["diagnostics"] = {{"requested", diagnostics.requested},
                        {"generated", diagnostics.generated},
                        {"kept", diagnostics.kept},
                        {"dropped_small_dxy", diagnostics.dropped_small_dxy},
                        {"dropped_inconsistent", diagnostics.dropped_inconsistent},
                        {"zero_d_y", diagnostics.zero_d_y}};
    return j;
}

util::Json ExponentEstimate::to_json() const {
    util::Json j;
    j["mode"] = (mode == Mode::one_sided) ? "one_sided" : "two_sided";
    j["degenerate"] = degenerate;
    if (degenerate) j["degenerate_reason"] = degenerate_reason;
    if (nu_hat) j["nu_hat"] = *nu_hat;
    if (c_hat) j["c_hat"] = *c_hat;
    j["fit_residual"] = fit_residual;
    j["shells_used"] = shells_used;
    util::Json bins = util::Json::array();
    for (const ShellBin& b : bin_table)
        bins.push_back({{"shell", b.shell},
                        {"log_r_center", b.log_center},
                        {"envelope", b.envelope},
                        {"count", b.count}});
    j["bin_table"] = std::move(bins);
    return j;
}

std::string ExponentEstimate::bin_table_csv() const {
    std::ostringstream os;
    os << "shell,log_r_center,envelope,count\n";
    os.precision(17);
    for (const ShellBin& b : bin_table)
        os << b.shell << "," << b.log_center << "," << b.envelope << "," << b.count << "\n";
    return os.str();
}

}  // namespace regsep::lojasiewicz
