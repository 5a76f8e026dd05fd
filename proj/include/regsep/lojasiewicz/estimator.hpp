#pragma once

// Exponent estimation from separation samples.
//
// The separation inequalities are worst-case bounds, so the exponent is read
// off the lower envelope rather than a mean regression: per dyadic shell of
// d_XY the envelope is the minimum of log d_Y (one-sided) or log(d_X + d_Y)
// (two-sided), and the estimate is the least-squares slope of the envelope
// against the shell log-centers over the deepest half of the populated
// shells, where curvature bias is smallest.

#include <optional>
#include <string>
#include <vector>

#include "regsep/lojasiewicz/samples.hpp"

namespace regsep::lojasiewicz {

struct ShellBin {
    int shell = 0;
    double log_center = 0.0;  // natural log of the shell's dyadic center radius
    double envelope = 0.0;    // per-shell minimum of the log separation value
    int count = 0;
};

struct FitOptions {
    // Degenerate when more than this fraction of raw samples was dropped for
    // d_XY below the floor, or had d_Y below the floor (local containment).
    double degenerate_fraction = 0.5;
    // Estimator floor corresponding to "exponent at least 1" with slack.
    double unit_floor = 0.9;
    // A shell counts as populated only with this many samples; near-empty
    // shells put their envelope far from the bin center and bias the slope.
    int min_shell_count = 4;
};

struct ExponentEstimate {
    std::optional<double> nu_hat;  // absent when degenerate
    std::optional<double> c_hat;
    std::vector<ShellBin> bin_table;
    double fit_residual = 0.0;  // RMS envelope deviation from the fitted line
    bool degenerate = false;
    std::string degenerate_reason;
    Mode mode = Mode::one_sided;
    int shells_used = 0;

    util::Json to_json() const;
    // CSV columns: shell,log_r_center,envelope,count
    std::string bin_table_csv() const;
};

// Fits the envelope slope. Throws when fewer than two populated shells
// remain and the sample set is not already degenerate.
ExponentEstimate estimate_exponent(const SampleSet& samples, const FitOptions& options = {});

struct ViolationReport {
    int checked = 0;
    int violations = 0;
    double violation_fraction = 0.0;
    double worst_ratio = std::numeric_limits<double>::infinity();  // min lhs / (c d_XY^nu)
};

// Fraction and worst margin of samples violating the separation inequality
// with the given exponent and constant, in the mode the samples carry.
// Samples with shell_index below min_shell are ignored.
ViolationReport verify_separation(const SampleSet& samples, double nu, double c, int min_shell = 0);

struct ModesResult {
    ExponentEstimate one_sided;
    ExponentEstimate two_sided;
    double gap = 0.0;
    bool floor_satisfied = false;  // both estimates at least the unit floor
};

// Runs both formulations with shared options and reports the estimate gap.
// Throws when either mode is degenerate.
ModesResult modes_consistency(const variety::VarietySpec& x_set, const variety::VarietySpec& y_set,
                              const Eigen::VectorXcd& x0, const CollectOptions& options,
                              std::uint64_t seed, const FitOptions& fit = {});

}  // namespace regsep::lojasiewicz
