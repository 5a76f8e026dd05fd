#pragma once

// Report assembly and the scenario runner.

#include <string>
#include <vector>

#include "regsep/harness/checks.hpp"
#include "regsep/harness/scenario.hpp"

namespace regsep::harness {

inline constexpr int kReportSchemaVersion = 1;

struct Report {
    std::string scenario_name;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;

    bool all_passed() const;  // no non-skipped check failed or errored

    util::Json to_json() const;
    // Flat per-check rows: index,type,status,metric,value,bound_low,bound_high,seed
    std::string to_csv() const;
};

// Runs every check of the scenario in declaration order, each with a seed
// derived from (seed, check index). Individual check errors are captured in
// the report without aborting subsequent checks. `type_filter` restricts
// execution to the listed check types when non-empty.
Report run_scenario(const Scenario& scenario, std::uint64_t seed,
                    const std::vector<std::string>& type_filter = {});

}  // namespace regsep::harness
