#include "regsep/harness/report.hpp"

#include <algorithm>
#include <sstream>

#include "regsep/util/rng.hpp"

namespace regsep::harness {

using lojasiewicz::Mode;

namespace {

lojasiewicz::Mode mode_from(const util::Json& params, Mode fallback) {
    const std::string m = params.value("mode", std::string());
    if (m == "one_sided") return Mode::one_sided;
    if (m == "two_sided") return Mode::two_sided;
    return fallback;
}

CheckRecord dispatch(const Scenario& sc, const CheckSpec& check, std::uint64_t check_seed) {
    const util::Json& p = check.params;
    if (check.type == "estimate") {
        EstimateCheckParams params;
        params.mode = mode_from(p, sc.estimator.mode);
        if (p.contains("expect_nu")) {
            const auto range = p.at("expect_nu");
            params.expect_nu = std::make_pair(range.at(0).get<double>(), range.at(1).get<double>());
        }
        return check_estimate(*sc.x_set, *sc.y_set, sc.base_point, sc.estimator, params,
                              sc.replication_seeds, check_seed);
    }
    if (check.type == "section_monotonicity") {
        SectionMonotonicityParams params;
        params.trials = p.value("trials", params.trials);
        params.tol_section = p.value("tol_section", params.tol_section);
        params.pass_fraction = p.value("pass_fraction", params.pass_fraction);
        return check_section_monotonicity(*sc.x_set, *sc.y_set, sc.base_point, sc.estimator,
                                          params, check_seed);
    }
    if (check.type == "distance_comparability") {
        DistanceComparabilityParams params;
        params.trials = p.value("trials", params.trials);
        params.ratio_bound = p.value("ratio_bound", params.ratio_bound);
        params.min_growth_slope = p.value("min_growth_slope", params.min_growth_slope);
        params.pass_fraction = p.value("pass_fraction", params.pass_fraction);
        if (p.contains("hyperplanes"))
            for (const auto& hj : p.at("hyperplanes"))
                params.explicit_hyperplanes.push_back(geometry::Hyperplane::from_json(hj));
        return check_distance_comparability(*sc.x_set, sc.base_point, sc.estimator, params,
                                            check_seed);
    }
    if (check.type == "tangency") {
        TangencyBoundParams params;
        params.truncation = p.value("truncation", params.truncation);
        params.tol = p.value("tol", params.tol);
        return check_tangency_bound(*sc.x_set, *sc.y_set, sc.base_point, sc.estimator, params,
                                    check_seed);
    }
    if (check.type == "lemma1") {
        Lemma1Params params;
        params.configurations = p.value("configurations", params.configurations);
        params.angle = p.value("angle", params.angle);
        params.max_attempts_factor = p.value("max_attempts_factor", params.max_attempts_factor);
        return check_lemma1(sc.ambient_dim, sc.base_point, params, check_seed);
    }
    if (check.type == "modes_consistency") {
        ModesConsistencyParams params;
        params.gap_tolerance = p.value("gap_tolerance", params.gap_tolerance);
        const std::string strategy = p.value("two_sided_strategy", std::string("near_variety"));
        params.strategy = (strategy == "isotropic") ? lojasiewicz::TwoSidedStrategy::isotropic
                                                    : lojasiewicz::TwoSidedStrategy::near_variety;
        return check_modes_consistency(*sc.x_set, *sc.y_set, sc.base_point, sc.estimator, params,
                                       check_seed);
    }
    throw Error("run_scenario: unknown check type '" + check.type + "'");
}

}  // namespace

bool Report::all_passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckRecord& r) {
        return r.status == CheckStatus::fail || r.status == CheckStatus::error;
    });
}

util::Json Report::to_json() const {
    util::Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["scenario"] = scenario_name;
    j["seed"] = seed;
    util::Json arr = util::Json::array();
    int pass = 0, fail = 0, skip = 0, error = 0;
    for (const CheckRecord& r : checks) {
        arr.push_back(r.to_json());
        switch (r.status) {
            case CheckStatus::pass: ++pass; break;
            case CheckStatus::fail: ++fail; break;
            case CheckStatus::skip: ++skip; break;
            case CheckStatus::error: ++error; break;
        }
    }
    j["checks"] = std::move(arr);
    j["summary"] = {{"pass", pass}, {"fail", fail}, {"skip", skip}, {"error", error},
                    {"all_passed", all_passed()}};
    return j;
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "index,type,status,metric,value,bound_low,bound_high,seed\n";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const CheckRecord& r = checks[i];
        std::string metric = "-";
        std::string value = "-";
        std::string lo = "-";
        std::string hi = "-";
        auto num = [](double v) {
            std::ostringstream s;
            s.precision(17);
            s << v;
            return s.str();
        };
        if (r.type == "estimate" && r.results.contains("estimate") &&
            r.results["estimate"].contains("nu_hat")) {
            metric = "nu_hat";
            value = num(r.results["estimate"]["nu_hat"].get<double>());
            if (r.tolerances.contains("expect_nu")) {
                lo = num(r.tolerances["expect_nu"][0].get<double>());
                hi = num(r.tolerances["expect_nu"][1].get<double>());
            }
        } else if (r.type == "section_monotonicity" && r.results.contains("pass_fraction")) {
            metric = "pass_fraction";
            value = num(r.results["pass_fraction"].get<double>());
            lo = num(r.tolerances["pass_fraction"].get<double>());
        } else if (r.type == "distance_comparability" && r.results.contains("pass_fraction")) {
            metric = "pass_fraction";
            value = num(r.results["pass_fraction"].get<double>());
            lo = num(r.tolerances["pass_fraction"].get<double>());
        } else if (r.type == "tangency" && r.results.contains("nu_hat")) {
            metric = "nu_hat_minus_s";
            value = num(r.results["nu_hat"].get<double>() - r.results["s"].get<double>());
            lo = num(1.0 - r.tolerances["tol"].get<double>());
        } else if (r.type == "lemma1" && r.results.contains("fails")) {
            metric = "fails";
            value = num(r.results["fails"].get<int>());
            hi = "0";
        } else if (r.type == "modes_consistency" && r.results.contains("gap")) {
            metric = "gap";
            value = num(r.results["gap"].get<double>());
            hi = num(r.tolerances["gap_tolerance"].get<double>());
        }
        os << i << "," << r.type << "," << to_string(r.status) << "," << metric << "," << value
           << "," << lo << "," << hi << "," << r.seed << "\n";
    }
    return os.str();
}

Report run_scenario(const Scenario& scenario, std::uint64_t seed,
                    const std::vector<std::string>& type_filter) {
    Report report;
    report.scenario_name = scenario.name;
    report.seed = seed;
    for (std::size_t i = 0; i < scenario.checks.size(); ++i) {
        const CheckSpec& check = scenario.checks[i];
        if (!type_filter.empty() &&
            std::find(type_filter.begin(), type_filter.end(), check.type) == type_filter.end())
            continue;
        const std::uint64_t check_seed = util::derive_seed(seed, static_cast<std::uint64_t>(i));
        try {
            report.checks.push_back(dispatch(scenario, check, check_seed));
        } catch (const std::exception& e) {
            CheckRecord rec;
            rec.type = check.type;
            rec.status = CheckStatus::error;
            rec.message = e.what();
            rec.seed = check_seed;
            report.checks.push_back(std::move(rec));
        }
    }
    return report;
}

}  // namespace regsep::harness
