#pragma once

// Scenario files: a pair of varieties at a base point, estimator options and
// a list of checks with per-check parameters, loaded from JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regsep/lojasiewicz/samples.hpp"
#include "regsep/variety/spec.hpp"

namespace regsep::harness {

struct CheckSpec {
    std::string type;   // estimate | section_monotonicity | distance_comparability
                        // | tangency | lemma1 | modes_consistency
    util::Json params;  // per-check parameters
};

struct Scenario {
    std::string name;
    std::uint64_t seed = 42;
    int ambient_dim = 0;
    Eigen::VectorXcd base_point;
    std::optional<variety::VarietySpec> x_set;
    std::optional<variety::VarietySpec> y_set;
    lojasiewicz::CollectOptions estimator;
    std::vector<std::uint64_t> replication_seeds;  // optional estimator replication
    std::vector<CheckSpec> checks;

    static Scenario from_json(const util::Json& j);
    static Scenario from_file(const std::string& path);
};

}  // namespace regsep::harness
