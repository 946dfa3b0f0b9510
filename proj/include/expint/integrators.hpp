#ifndef EXPINT_INTEGRATORS_HPP
#define EXPINT_INTEGRATORS_HPP

#include <vector>

#include "expint/psystem.hpp"
#include "expint/solvers.hpp"

namespace expint {

enum class SolverKind { FixedPoint, Newton };

/// Composition weights b_1..b_s of a diagonally implicit symplectic
/// (exponential) Runge-Kutta scheme; abscissae are always derived as
/// c_i = b_1 + ... + b_{i-1} + b_i/2.
class DisrkScheme {
public:
    explicit DisrkScheme(std::vector<double> weights);

    int stages() const { return static_cast<int>(weights_.size()); }
    double weight(int i) const { return weights_[i]; }
    double abscissa(int i) const;
    double weight_sum() const;

    static DisrkScheme single_stage();   // plain (exponential) midpoint
    static DisrkScheme disex6();         // the published 6-stage weights

private:
    std::vector<double> weights_;
};

struct StepOutcome {
    State state;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    int failed_substage = -1;  // disex only; -1 when not applicable
};

/// q' = e^{Ah} q + T f(q); explicit.
StepOutcome exp_euler_step(const PoissonSystem& system, const State& state,
                           double h);

/// Implicit midpoint rule q' = q + h J grad H((q + q')/2).
StepOutcome midpoint_step(const PoissonSystem& system, const State& state,
                          double h, const SolverConfig& config,
                          SolverKind kind = SolverKind::FixedPoint);

/// Discrete gradient method q' = q + h J (D (q+q')/2 + dgV(q, q')).
StepOutcome discrete_gradient_step(const PoissonSystem& system,
                                   const State& state, double h,
                                   const SolverConfig& config,
                                   SolverKind kind = SolverKind::FixedPoint);

/// Exponential midpoint rule
/// q' = e^{Ah} q + h e^{Ah/2} f((e^{Ah/2} q + e^{-Ah/2} q')/2).
StepOutcome exp_midpoint_step(const PoissonSystem& system, const State& state,
                              double h, const SolverConfig& config);

/// Composition of exponential midpoint substeps with timesteps b_i h.
StepOutcome disex_step(const DisrkScheme& scheme, const PoissonSystem& system,
                       const State& state, double h,
                       const SolverConfig& config);

/// Energy-preserving exponential integrator
/// q' = e^{Ah} q + T J dgV(q, q').
StepOutcome energy_exp_step(const PoissonSystem& system, const State& state,
                            double h, const SolverConfig& config);

}  // namespace expint

#endif
