#pragma once

// Verification checks: each check runs one empirical claim against declared
// tolerances and returns a record carrying its inputs, numeric results and
// the tolerances it was judged against.

#include <cstdint>
#include <string>

#include "regsep/geometry/hyperplane.hpp"
#include "regsep/lojasiewicz/estimator.hpp"
#include "regsep/variety/spec.hpp"

namespace regsep::harness {

enum class CheckStatus { pass, fail, skip, error };

std::string to_string(CheckStatus s);

struct CheckRecord {
    std::string type;
    CheckStatus status = CheckStatus::error;
    std::string message;       // populated for skip/error
    util::Json inputs;         // echo of the check inputs
    util::Json results;        // numeric results
    util::Json tolerances;     // every tolerance a verdict was judged against
    std::uint64_t seed = 0;
    double duration_ms = 0.0;  // excluded from determinism comparisons

    util::Json to_json() const;
};

struct EstimateCheckParams {
    lojasiewicz::Mode mode = lojasiewicz::Mode::one_sided;
    std::optional<std::pair<double, double>> expect_nu;  // verdict range when present
};

// Runs the estimator once (plus optional replications) and judges nu_hat
// against the expected range when one is declared; otherwise passes iff the
// estimate is non-degenerate.
CheckRecord check_estimate(const variety::VarietySpec& x_set, const variety::VarietySpec& y_set,
                           const Eigen::VectorXcd& x0, const lojasiewicz::CollectOptions& options,
                           const EstimateCheckParams& params,
                           const std::vector<std::uint64_t>& replication_seeds, std::uint64_t seed);

struct SectionMonotonicityParams {
    int trials = 20;
    double tol_section = 0.2;     // accepted slack on nu_section <= nu_ambient
    double pass_fraction = 0.9;   // required fraction of valid trials
};

// Estimates the ambient exponent, then the exponent of the pair sectioned by
// seeded random hyperplanes, and counts trials with
// nu_section <= nu_ambient + tol_section. Degenerate sectioned trials are
// counted separately, not failed.
CheckRecord check_section_monotonicity(const variety::VarietySpec& x_set,
                                       const variety::VarietySpec& y_set,
                                       const Eigen::VectorXcd& x0,
                                       const lojasiewicz::CollectOptions& options,
                                       const SectionMonotonicityParams& params, std::uint64_t seed);

struct DistanceComparabilityParams {
    int trials = 20;
    double ratio_bound = 3.0;        // shell-max ratio spread allowed per trial
    double min_growth_slope = -0.1;  // slope of log c_j vs shell log-radius
    double pass_fraction = 0.9;
    std::vector<geometry::Hyperplane> explicit_hyperplanes;  // overrides random draws
};

// For random hyperplanes through x0, samples points of the hyperplane and
// compares rho(x, X ∩ H) against rho(x, X): per-shell maxima of the ratio
// must stay within ratio_bound of each other and must not blow up as the
// radius shrinks.
CheckRecord check_distance_comparability(const variety::VarietySpec& x_set,
                                         const Eigen::VectorXcd& x0,
                                         const lojasiewicz::CollectOptions& options,
                                         const DistanceComparabilityParams& params,
                                         std::uint64_t seed);

struct TangencyBoundParams {
    int truncation = 12;
    double tol = 0.2;  // slack on s <= nu_hat - 1
};

// Computes the order of tangency of two graphs over shared parameters and
// judges s <= nu_hat - 1 + tol against the estimated exponent. Skips when
// the order exceeds the truncation degree.
CheckRecord check_tangency_bound(const variety::VarietySpec& x_set,
                                 const variety::VarietySpec& y_set, const Eigen::VectorXcd& x0,
                                 const lojasiewicz::CollectOptions& options,
                                 const TangencyBoundParams& params, std::uint64_t seed);

struct Lemma1Params {
    int configurations = 500;  // precondition-satisfying configurations sought
    double angle = M_PI / 4.0;
    int max_attempts_factor = 40;
};

// Randomized counterexample search for the minimal-angle distance bound:
// generates configurations aimed at the bound's hypotheses and requires that
// no hypothesis-satisfying configuration violates it. Configurations that
// fail a hypothesis are skips, never failures.
CheckRecord check_lemma1(int ambient_dim, const Eigen::VectorXcd& x0, const Lemma1Params& params,
                         std::uint64_t seed);

struct ModesConsistencyParams {
    double gap_tolerance = 0.25;
    lojasiewicz::TwoSidedStrategy strategy = lojasiewicz::TwoSidedStrategy::near_variety;
};

// Runs both separation formulations and judges the estimate gap.
CheckRecord check_modes_consistency(const variety::VarietySpec& x_set,
                                    const variety::VarietySpec& y_set,
                                    const Eigen::VectorXcd& x0,
                                    const lojasiewicz::CollectOptions& options,
                                    const ModesConsistencyParams& params, std::uint64_t seed);

}  // namespace regsep::harness
