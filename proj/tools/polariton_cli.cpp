// Scenario runner: `run <config> --out <dir>` and
// `compare <dirA> <dirB> --quantity <name> --tol <x>`.
#include <iostream>

#include <CLI11.hpp>

#include "polariton/scenario.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Dissipative ultrastrong-coupling polariton scenarios"};
    app.require_subcommand(1);

    std::string config, out;
    auto* run = app.add_subcommand("run", "Run a scenario file and write CSVs plus manifest.json");
    run->add_option("config", config, "Scenario file")->required();
    run->add_option("--out", out, "Output directory")->required();

    std::string dir_a, dir_b, quantity;
    double tol = 0;
    auto* compare = app.add_subcommand("compare", "Compare one exported quantity of two runs");
    compare->add_option("dir_a", dir_a)->required();
    compare->add_option("dir_b", dir_b)->required();
    compare->add_option("--quantity", quantity, "trajectory, moments, spectrum or weight")->required();
    compare->add_option("--tol", tol, "Absolute tolerance")->required()->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (*run) return polariton::run_command(config, out, std::cout);
    return polariton::compare_command(dir_a, dir_b, quantity, tol, std::cout);
}
