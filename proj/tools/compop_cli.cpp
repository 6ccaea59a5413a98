#include "compop/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitOracle = 2;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact norms, compactness and essential topology of composition operators on bounded functions"};
    std::string scenario_path;
    std::string out_path;
    compop::BudgetOverrides overrides;
    bool validate = false;
    std::uint64_t seed = 0;

    app.add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
    app.add_option("--budget-points", overrides.points, "Point budget for enumeration")->check(CLI::PositiveNumber);
    app.add_option("--radius", overrides.radius, "Truncation radius M for oracles")->check(CLI::PositiveNumber);
    app.add_option("--family", overrides.family, "Witness family length n")->check(CLI::PositiveNumber);
    app.add_flag("--validate", validate, "Cross-check every query against the numerical oracles");
    app.add_option("--seed", seed, "Accepted for interface compatibility; all procedures are deterministic");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    std::ifstream in(scenario_path);
    std::stringstream buffer;
    buffer << in.rdbuf();

    nlohmann::ordered_json report;
    try {
        const auto scenario = compop::parse_scenario(buffer.str(), overrides);
        report = compop::run(scenario, {validate});
    } catch (const compop::ScenarioError& e) {
        for (const auto& d : e.diagnostics()) {
            std::cerr << scenario_path << ":" << d.line << ": error: " << d.message << '\n';
        }
        return kExitValidation;
    } catch (const compop::ConsistencyError& e) {
        std::cerr << "oracle disagreement: " << e.what() << '\n';
        return kExitOracle;
    }

    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << '\n';
            return kExitValidation;
        }
        out << text;
    }
    return kExitOk;
}
