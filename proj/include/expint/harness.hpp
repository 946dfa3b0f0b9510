#ifndef EXPINT_HARNESS_HPP
#define EXPINT_HARNESS_HPP

#include <memory>
#include <string>
#include <vector>

#include "expint/models.hpp"
#include "expint/verify.hpp"

namespace expint {

// process exit codes shared by the CLI
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDivergence = 2;
inline constexpr int kExitVerifyFailure = 3;

struct IntegrateConfig {
    std::string model = "nls";        // nls | kdv
    int resolution = 41;              // odd node count
    double nu = 5e-4;                 // kdv dispersion
    std::string method = "exp_midpoint";
    std::string solver = "fixed_point";  // fixed_point | newton
    double h = 0.01;
    long steps = 1000;
    double tolerance = 1e-12;
    int max_iterations = 100;
    bool linear = false;              // disable the potential
    bool with_reference = false;      // add the traj_error column
    unsigned seed = 0;
    std::string output = "trajectory.csv";

    void validate() const;
};

struct SweepConfig {
    std::string model = "nls";
    double nu = 5e-4;
    std::vector<int> resolutions = {11, 21, 41, 81};
    /// method names, optionally suffixed ":newton"
    std::vector<std::string> methods = {"midpoint", "exp_midpoint",
                                        "energy_exp"};
    double h_lo = 1e-4;
    double h_hi = 0.5;
    int horizon_steps = 400;
    double tolerance = 1e-10;
    int max_iterations = 100;
    bool linear = false;
    int threads = 0;                  // 0: hardware concurrency
    unsigned seed = 0;
    std::string output = "sweep.csv";

    void validate() const;
};

std::unique_ptr<PoissonSystem> make_system(const std::string& model, int n,
                                           double nu, bool linear);

/// Bind a method name (and solver kind for the classical implicit ones)
/// to a Stepper. Throws on unknown names or invalid combinations.
Stepper make_stepper(const std::string& method, const std::string& solver,
                     const SolverConfig& config);

State make_initial_condition(const std::string& model,
                             const SpectralGrid& grid);

int run_integrate(const IntegrateConfig& config);
int run_sweep(const SweepConfig& config);
/// suite: structure | order | poisson | composition
int run_verify(const std::string& suite);
int emit_plot_script(const std::vector<std::string>& csv_paths,
                     const std::string& output_path);

}  // namespace expint

#endif
