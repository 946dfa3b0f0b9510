#ifndef EXPINT_VERIFY_HPP
#define EXPINT_VERIFY_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "expint/integrators.hpp"
#include "expint/psystem.hpp"

namespace expint {

/// One-step map under test; throws StepFailure on solver breakdown.
using StepMap = std::function<Vector(const Vector&)>;
/// Method bound to a system, for order studies and sweeps.
using Stepper =
    std::function<StepOutcome(const PoissonSystem&, const State&, double)>;

class StepFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite-difference Jacobian test of the Poisson condition
/// (grad phi) J (grad phi)^T = J; returns the max-norm deviation.
double poisson_check(const StepMap& step,
                     const std::function<Vector(const Vector&)>& j_action,
                     const Vector& q, double fd_eps);

/// Max |H(q_k) - H(q_0)| over a trajectory, plus the full series.
std::pair<double, std::vector<double>> energy_drift(
    const PoissonSystem& system, const std::vector<Vector>& trajectory);

struct DgCheckResult {
    double v_residual = 0.0;  // discrete gradient of V against Eq-style identity
    double h_residual = 0.0;  // same identity for dgH = D(q+q')/2 + dgV
};

DgCheckResult dg_condition_check(const PoissonSystem& system, const Vector& q,
                                 const Vector& q2);

/// Least-squares slope of log(error at horizon) vs log(h); the reference
/// trajectory is computed with the exponential midpoint rule at
/// min(h_list)/20. Non-converged runs are dropped; fewer than three
/// surviving points is an error.
double estimate_order(const Stepper& method, const PoissonSystem& system,
                      const State& initial, double horizon,
                      const std::vector<double>& h_list,
                      const SolverConfig& config);

struct SweepPoint {
    double h = 0.0;
    bool converged = false;
    int max_iterations_observed = 0;
};

struct SweepResult {
    std::string method;
    int resolution = 0;
    double h_max = 0.0;  // 0 when no grid point converged
    std::vector<SweepPoint> points;
};

/// Largest grid timestep for which every one of horizon_steps steps
/// converges; the scan ascends and stops at the first failure, so the
/// reported h_max is prefix-monotone by construction.
SweepResult sweep_max_timestep(const std::string& method_id,
                               const Stepper& method,
                               const PoissonSystem& system,
                               const State& initial,
                               const std::vector<double>& h_grid,
                               int horizon_steps);

/// Timestep grid {1,2,4,5,6,8} x 10^e covering [lo, hi].
std::vector<double> decade_grid(double lo, double hi);

/// Least-squares slope of log(y) vs log(x).
double loglog_slope(const std::vector<double>& x,
                    const std::vector<double>& y);

/// Direct evaluation of the DISEX Butcher tableau (stagewise fixed-point
/// solves); kept as the independent oracle for the composition form.
StepOutcome disex_tableau_step(const DisrkScheme& scheme,
                               const PoissonSystem& system,
                               const State& state, double h,
                               const SolverConfig& config);

}  // namespace expint

#endif
