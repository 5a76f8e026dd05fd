#include "regsep/harness/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace regsep::harness {

using lojasiewicz::Mode;
using lojasiewicz::TwoSidedStrategy;

namespace {

const std::set<std::string> kKnownChecks = {
    "estimate", "section_monotonicity", "distance_comparability",
    "tangency", "lemma1", "modes_consistency"};

void validate(const Scenario& s) {
    if (s.ambient_dim < 1) throw Error("scenario: ambient_dim must be positive");
    if (s.base_point.size() != s.ambient_dim)
        throw Error("scenario: base_point length does not match ambient_dim");
    auto check_spec = [&](const std::optional<variety::VarietySpec>& v, const char* name) {
        if (!v) return;
        if (v->ambient_dim() != s.ambient_dim)
            throw Error(std::string("scenario: ") + name + " ambient_dim mismatch");
        if ((v->base_point() - s.base_point).norm() > 1e-10)
            throw Error(std::string("scenario: ") + name + " base point mismatch");
    };
    check_spec(s.x_set, "X");
    check_spec(s.y_set, "Y");

    for (const CheckSpec& c : s.checks) {
        if (!kKnownChecks.count(c.type)) throw Error("scenario: unknown check type '" + c.type + "'");
        const bool needs_pair = c.type == "estimate" || c.type == "section_monotonicity" ||
                                c.type == "tangency" || c.type == "modes_consistency";
        if (needs_pair && (!s.x_set || !s.y_set))
            throw Error("scenario: check '" + c.type + "' requires both X and Y");
        if (c.type == "distance_comparability" && !s.x_set)
            throw Error("scenario: check 'distance_comparability' requires X");
        if (c.type == "tangency") {
            if (!s.x_set->is_graph() || !s.y_set->is_graph())
                throw Error("scenario: check 'tangency' requires graph forms for X and Y");
            if (s.x_set->param_dim() != s.y_set->param_dim())
                throw Error("scenario: check 'tangency' requires a shared parameter space");
        }
    }
}

}  // namespace

Scenario Scenario::from_json(const util::Json& j) {
    Scenario s;
    s.name = j.value("name", std::string("scenario"));
    s.seed = j.value("seed", std::uint64_t{42});
    s.ambient_dim = j.at("ambient_dim").get<int>();
    s.base_point = util::cvector_from_json(j.at("base_point"));

    if (j.contains("X")) s.x_set = variety::VarietySpec::from_json(j.at("X"));
    if (j.contains("Y")) s.y_set = variety::VarietySpec::from_json(j.at("Y"));

    if (j.contains("estimator")) {
        const util::Json& e = j.at("estimator");
        s.estimator.radius = e.value("radius", 1.0);
        s.estimator.shells = e.value("shells", 14);
        s.estimator.per_shell = e.value("per_shell", 64);
        const std::string mode = e.value("mode", std::string("one_sided"));
        if (mode == "one_sided")
            s.estimator.mode = Mode::one_sided;
        else if (mode == "two_sided")
            s.estimator.mode = Mode::two_sided;
        else
            throw Error("scenario: unknown estimator mode '" + mode + "'");
        const std::string strategy = e.value("two_sided_strategy", std::string("isotropic"));
        if (strategy == "isotropic")
            s.estimator.strategy = TwoSidedStrategy::isotropic;
        else if (strategy == "near_variety")
            s.estimator.strategy = TwoSidedStrategy::near_variety;
        else
            throw Error("scenario: unknown two_sided_strategy '" + strategy + "'");
        if (e.contains("seeds"))
            s.replication_seeds = e.at("seeds").get<std::vector<std::uint64_t>>();
        if (e.contains("oracle")) {
            const util::Json& o = e.at("oracle");
            s.estimator.oracle.multistarts = o.value("multistarts", s.estimator.oracle.multistarts);
            s.estimator.oracle.implicit_multistarts =
                o.value("implicit_multistarts", s.estimator.oracle.implicit_multistarts);
            s.estimator.oracle.max_iterations =
                o.value("max_iterations", s.estimator.oracle.max_iterations);
        }
    }

    if (j.contains("checks")) {
        for (const auto& cj : j.at("checks")) {
            CheckSpec c;
            c.type = cj.at("type").get<std::string>();
            c.params = cj;
            s.checks.push_back(std::move(c));
        }
    }

    validate(s);
    return s;
}

Scenario Scenario::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("scenario: cannot open file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    util::Json j;
    try {
        j = util::Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("scenario: JSON parse error in '" + path + "' at byte " +
                    std::to_string(e.byte) + ": " + e.what());
    }
    try {
        return from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw Error("scenario: invalid scenario '" + path + "': " + e.what());
    }
}

}  // namespace regsep::harness
