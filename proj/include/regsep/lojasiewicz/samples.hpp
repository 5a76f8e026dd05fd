#pragma once

// Separation samples: probe points near the base point together with their
// distances to Y and to X ∩ Y (one-sided), or to X, Y and X ∩ Y (two-sided).
// Samples are binned into dyadic shells of the intersection distance:
// shell_index = floor(-log2(d_XY / radius)).

#include <cstdint>
#include <optional>
#include <vector>

#include "regsep/util/json_convert.hpp"
#include "regsep/variety/distance.hpp"
#include "regsep/variety/sampling.hpp"
#include "regsep/variety/spec.hpp"

namespace regsep::lojasiewicz {

enum class Mode { one_sided, two_sided };

// Probe placement for the two-sided mode. The default probes isotropic
// ambient directions; the near-variety extension spreads probes around
// points of X and Y with log-uniform offsets, which reaches the thin
// binding directions of curved pairs at practical sample counts.
enum class TwoSidedStrategy { isotropic, near_variety };

struct SeparationSample {
    Eigen::VectorXcd x;
    std::optional<double> d_X;  // two-sided only
    double d_Y = 0.0;
    double d_XY = 0.0;
    int shell_index = -1;  // -1 when the sample was dropped (d_XY below the floor)
};

struct CollectOptions {
    double radius = 1.0;
    int shells = 14;     // J
    int per_shell = 64;  // n; total draw is n * J
    Mode mode = Mode::one_sided;
    TwoSidedStrategy strategy = TwoSidedStrategy::isotropic;
    double drop_tolerance = 1e-12;  // d_XY floor
    variety::DistanceOptions oracle;
    variety::SampleOptions sampling;
};

struct CollectDiagnostics {
    int requested = 0;
    int generated = 0;
    int kept = 0;
    int dropped_small_dxy = 0;
    int dropped_inconsistent = 0;  // d_XY < max(d_X, d_Y) - 1e-9
    int zero_d_y = 0;              // d_Y below the drop tolerance
};

struct SampleSet {
    Mode mode = Mode::one_sided;
    double radius = 1.0;
    int shells = 0;
    int per_shell = 0;  // nominal occupancy, used to decide which shells count
    std::vector<SeparationSample> samples;
    CollectDiagnostics diagnostics;

    util::Json to_json() const;
};

// Draws probes near x0 and records their separation distances. One-sided
// probes lie on X; two-sided probes are ambient. Samples whose d_XY falls
// below the drop tolerance stay in the set with shell_index -1 and are
// counted in the diagnostics. Requires x0 on both sets, radius > 0,
// shells >= 4 and per_shell >= 16; throws when no probe can be generated.
SampleSet collect_samples(const variety::VarietySpec& x_set, const variety::VarietySpec& y_set,
                          const Eigen::VectorXcd& x0, const CollectOptions& options,
                          std::uint64_t seed);

}  // namespace regsep::lojasiewicz
