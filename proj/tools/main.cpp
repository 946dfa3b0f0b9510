#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expint/harness.hpp"

namespace {

std::vector<int> parse_int_list(const std::vector<std::string>& items) {
    std::vector<int> out;
    for (const auto& s : items) out.push_back(std::stoi(s));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric exponential integrators for semilinear Poisson "
                 "systems"};
    app.require_subcommand(1);
    app.set_config("--config")->configurable(false);

    expint::IntegrateConfig icfg;
    auto* integrate = app.add_subcommand(
        "integrate", "run one trajectory and write a per-step CSV");
    integrate->add_option("--model", icfg.model, "nls | kdv");
    integrate->add_option("--resolution,-N", icfg.resolution,
                          "odd node count");
    integrate->add_option("--nu", icfg.nu, "KdV dispersion coefficient");
    integrate->add_option("--method", icfg.method,
                          "midpoint|dg|exp_euler|exp_midpoint|disex6|"
                          "energy_exp");
    integrate->add_option("--solver", icfg.solver, "fixed_point | newton");
    integrate->add_option("--timestep", icfg.h, "timestep");
    integrate->add_option("--steps", icfg.steps, "number of steps");
    integrate->add_option("--tolerance", icfg.tolerance, "solver tolerance");
    integrate->add_option("--max-iterations", icfg.max_iterations,
                          "solver iteration budget");
    integrate->add_flag("--linear", icfg.linear, "disable the potential");
    integrate->add_flag("--reference", icfg.with_reference,
                        "track trajectory error against a fine reference");
    integrate->add_option("--seed", icfg.seed, "recorded in the CSV header");
    integrate->add_option("--output,-o", icfg.output, "CSV path");

    expint::SweepConfig scfg;
    std::vector<std::string> resolutions;
    std::vector<std::string> methods;
    auto* sweep = app.add_subcommand(
        "sweep", "max-converging-timestep sweep over methods and N");
    sweep->add_option("--model", scfg.model, "nls | kdv");
    sweep->add_option("--nu", scfg.nu, "KdV dispersion coefficient");
    sweep->add_option("--resolutions", resolutions,
                      "odd node counts")->delimiter(',');
    sweep->add_option("--methods", methods,
                      "method names, optionally name:newton")->delimiter(',');
    sweep->add_option("--h-lo", scfg.h_lo, "smallest timestep");
    sweep->add_option("--h-hi", scfg.h_hi, "largest timestep");
    sweep->add_option("--horizon-steps", scfg.horizon_steps,
                      "steps per sweep point");
    sweep->add_option("--tolerance", scfg.tolerance, "solver tolerance");
    sweep->add_option("--max-iterations", scfg.max_iterations,
                      "solver iteration budget");
    sweep->add_flag("--linear", scfg.linear, "disable the potential");
    sweep->add_option("--threads", scfg.threads,
                      "worker pool size (0 = cores)");
    sweep->add_option("--seed", scfg.seed, "recorded in the CSV header");
    sweep->add_option("--output,-o", scfg.output, "CSV path");

    std::string suite;
    auto* verify = app.add_subcommand(
        "verify", "run a verification suite at pinned parameters");
    verify->add_option("suite", suite, "structure|order|poisson|composition")
        ->required();

    std::vector<std::string> csvs;
    std::string script_path = "plot.py";
    auto* plot = app.add_subcommand(
        "plot-script", "emit a python plot script for existing CSVs");
    plot->add_option("csvs", csvs, "input CSV files")->required();
    plot->add_option("--output,-o", script_path, "script path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : expint::kExitUsage;
    }

    try {
        if (*integrate) return expint::run_integrate(icfg);
        if (*sweep) {
            if (!resolutions.empty())
                scfg.resolutions = parse_int_list(resolutions);
            if (!methods.empty()) scfg.methods = methods;
            return expint::run_sweep(scfg);
        }
        if (*verify) return expint::run_verify(suite);
        if (*plot) return expint::emit_plot_script(csvs, script_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return expint::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return expint::kExitUsage;
    }
    return expint::kExitUsage;
}
