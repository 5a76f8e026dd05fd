// Command-line front end: runs scenario files and writes JSON/CSV reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regsep/harness/report.hpp"
#include "regsep/harness/scenario.hpp"

namespace {

struct CommonArgs {
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string out_path;
    bool verbose = false;
};

std::uint64_t resolve_seed(const CommonArgs& args, const regsep::harness::Scenario& scenario) {
    if (args.seed) return *args.seed;
    // Environment default applies only when --seed is absent.
    if (const char* env = std::getenv("REGSEP_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            std::cerr << "warning: ignoring non-numeric REGSEP_SEED\n";
        }
    }
    return scenario.seed;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw regsep::Error("cannot open output file '" + out_path + "'");
    out << text;
}

void print_shell_tables(const regsep::harness::Report& report) {
    for (const auto& check : report.checks) {
        auto print_bins = [&](const regsep::util::Json& est, const std::string& label) {
            if (!est.contains("bin_table")) return;
            std::cerr << "# " << check.type << " " << label << " shell table\n"
                      << "shell,log_r_center,envelope,count\n";
            for (const auto& bin : est["bin_table"])
                std::cerr << bin["shell"] << "," << bin["log_r_center"] << ","
                          << bin["envelope"] << "," << bin["count"] << "\n";
        };
        if (check.results.contains("estimate")) print_bins(check.results["estimate"], "");
        if (check.results.contains("ambient")) print_bins(check.results["ambient"], "ambient");
        if (check.results.contains("one_sided")) print_bins(check.results["one_sided"], "one_sided");
        if (check.results.contains("two_sided")) print_bins(check.results["two_sided"], "two_sided");
    }
}

// Estimates export their shell tables as CSV for external plotting.
std::string estimate_bin_csv(const regsep::harness::Report& report) {
    std::ostringstream os;
    os << "check,shell,log_r_center,envelope,count\n";
    os.precision(17);
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& results = report.checks[i].results;
        for (const char* key : {"estimate", "one_sided", "two_sided", "ambient"}) {
            if (!results.contains(key) || !results[key].contains("bin_table")) continue;
            for (const auto& bin : results[key]["bin_table"])
                os << i << "," << bin["shell"].get<int>() << ","
                   << bin["log_r_center"].get<double>() << "," << bin["envelope"].get<double>()
                   << "," << bin["count"].get<int>() << "\n";
        }
    }
    return os.str();
}

int run_command(const CommonArgs& args, const std::vector<std::string>& filter,
                bool bin_csv_when_csv) {
    const auto scenario = regsep::harness::Scenario::from_file(args.scenario_path);
    const std::uint64_t seed = resolve_seed(args, scenario);
    const auto report = regsep::harness::run_scenario(scenario, seed, filter);
    if (args.format == "json") {
        emit(report.to_json().dump(2), args.out_path);
    } else if (args.format == "csv") {
        emit(bin_csv_when_csv ? estimate_bin_csv(report) : report.to_csv(), args.out_path);
    } else {
        throw regsep::Error("unknown format '" + args.format + "'");
    }
    if (args.verbose) print_shell_tables(report);
    return report.all_passed() ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool positional_scenario) {
    if (positional_scenario)
        cmd->add_option("scenario", args.scenario_path, "scenario JSON file")->required();
    else
        cmd->add_option("--scenario", args.scenario_path, "scenario JSON file")->required();
    cmd->add_option("--seed", args.seed, "seed override (else REGSEP_SEED, else scenario seed)");
    cmd->add_option("--format", args.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", args.out_path, "write the report to a file instead of stdout");
    cmd->add_flag("--verbose", args.verbose, "print per-shell tables to stderr");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regular-separation exponent toolkit"};
    app.require_subcommand(1);

    CommonArgs run_args, estimate_args, section_args, tangency_args;

    CLI::App* run = app.add_subcommand("run", "run every check of a scenario");
    add_common(run, run_args, true);

    CLI::App* estimate =
        app.add_subcommand("estimate", "run the exponent-estimate checks of a scenario");
    add_common(estimate, estimate_args, false);

    CLI::App* section = app.add_subcommand(
        "section-check", "run the hyperplane-section checks of a scenario");
    add_common(section, section_args, false);

    CLI::App* tangency =
        app.add_subcommand("tangency", "run the order-of-tangency checks of a scenario");
    add_common(tangency, tangency_args, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(run_args, {}, false);
        if (estimate->parsed())
            return run_command(estimate_args, {"estimate", "modes_consistency"}, true);
        if (section->parsed())
            return run_command(section_args,
                               {"section_monotonicity", "distance_comparability", "lemma1"}, false);
        if (tangency->parsed()) return run_command(tangency_args, {"tangency"}, false);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
