#include "expint/integrators.hpp"

#include <cmath>
#include <stdexcept>

namespace expint {

DisrkScheme::DisrkScheme(std::vector<double> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty())
        throw std::invalid_argument("DisrkScheme: needs at least one stage");
    if (std::abs(weight_sum() - 1.0) > 1e-8)
        throw std::invalid_argument("DisrkScheme: weights must sum to 1");
}

double DisrkScheme::abscissa(int i) const {
    double c = 0.5 * weights_[i];
    for (int j = 0; j < i; ++j) c += weights_[j];
    return c;
}

double DisrkScheme::weight_sum() const {
    double s = 0.0;
    for (double b : weights_) s += b;
    return s;
}

DisrkScheme DisrkScheme::single_stage() { return DisrkScheme({1.0}); }

DisrkScheme DisrkScheme::disex6() {
    return DisrkScheme({0.5080048194000274, 1.360107162294827,
                        2.019293359181722, 0.5685658926458250,
                        -1.459852049586439, -1.996119183935963});
}

namespace {

StepOutcome from_solve(SolveResult&& solve, double t_next) {
    StepOutcome out;
    out.iterations = solve.iterations;
    out.residual = solve.residual;
    out.converged = solve.converged;
    if (solve.x.allFinite()) {
        out.state = State(std::move(solve.x), t_next);
    } else {
        out.state = State();  // divergence: no usable state
        out.state.t = t_next;
        out.converged = false;
    }
    return out;
}

// exponential Euler predictor, the default initial guess for the
// exponential methods
Vector exp_euler_value(const PoissonSystem& system, const Vector& q,
                       double h) {
    return system.apply_expA(h, q) +
           system.apply_intExpA(h, system.nonlinear_rhs(q));
}

Matrix fd_jacobian(const std::function<Vector(const Vector&)>& fn,
                   const Vector& x, double eps = 1e-7) {
    const int d = static_cast<int>(x.size());
    Matrix jac(d, d);
    Vector probe = x;
    for (int j = 0; j < d; ++j) {
        probe[j] = x[j] + eps;
        Vector fp = fn(probe);
        probe[j] = x[j] - eps;
        Vector fm = fn(probe);
        probe[j] = x[j];
        jac.col(j) = (fp - fm) / (2.0 * eps);
    }
    return jac;
}

}  // namespace

StepOutcome exp_euler_step(const PoissonSystem& system, const State& state,
                           double h) {
    StepOutcome out;
    out.state = State(exp_euler_value(system, state.q, h), state.t + h);
    out.converged = true;
    return out;
}

StepOutcome midpoint_step(const PoissonSystem& system, const State& state,
                          double h, const SolverConfig& config,
                          SolverKind kind) {
    const Vector& q = state.q;
    auto map = [&](const Vector& x) -> Vector {
        Vector mid = 0.5 * (q + x);
        return q + h * system.rhs(mid);
    };
    if (kind == SolverKind::FixedPoint)
        return from_solve(fixed_point_solve(map, q, config), state.t + h);

    Matrix jmat = dense_from_action(
        [&](const Vector& v) { return system.apply_J(v); }, system.dim());
    Matrix dmat = dense_from_action(
        [&](const Vector& v) { return system.apply_D(v); }, system.dim());
    auto residual = [&](const Vector& x) -> Vector { return x - map(x); };
    auto jacobian = [&](const Vector& x) -> Matrix {
        Vector mid = 0.5 * (q + x);
        return Matrix::Identity(system.dim(), system.dim()) -
               0.5 * h * jmat * (dmat + system.hess_V(mid));
    };
    return from_solve(newton_solve(residual, jacobian, q, config),
                      state.t + h);
}

StepOutcome discrete_gradient_step(const PoissonSystem& system,
                                   const State& state, double h,
                                   const SolverConfig& config,
                                   SolverKind kind) {
    const Vector& q = state.q;
    auto map = [&](const Vector& x) -> Vector {
        return q + h * system.apply_J(system.apply_D(0.5 * (q + x)) +
                                      system.discrete_grad_V(q, x));
    };
    if (kind == SolverKind::FixedPoint)
        return from_solve(fixed_point_solve(map, q, config), state.t + h);

    Matrix jmat = dense_from_action(
        [&](const Vector& v) { return system.apply_J(v); }, system.dim());
    Matrix dmat = dense_from_action(
        [&](const Vector& v) { return system.apply_D(v); }, system.dim());
    auto residual = [&](const Vector& x) -> Vector { return x - map(x); };
    auto jacobian = [&](const Vector& x) -> Matrix {
        Matrix dg_jac = fd_jacobian(
            [&](const Vector& y) { return system.discrete_grad_V(q, y); }, x);
        return Matrix::Identity(system.dim(), system.dim()) -
               h * jmat * (0.5 * dmat + dg_jac);
    };
    return from_solve(newton_solve(residual, jacobian, q, config),
                      state.t + h);
}

StepOutcome exp_midpoint_step(const PoissonSystem& system, const State& state,
                              double h, const SolverConfig& config) {
    const Vector& q = state.q;
    Vector sq = system.apply_expA(h, q);
    Vector sq_half = system.apply_expA(0.5 * h, q);
    auto map = [&](const Vector& x) -> Vector {
        Vector mid = 0.5 * (sq_half + system.apply_expA(-0.5 * h, x));
        return sq + h * system.apply_expA(0.5 * h, system.nonlinear_rhs(mid));
    };
    Vector guess = exp_euler_value(system, q, h);
    return from_solve(fixed_point_solve(map, guess, config), state.t + h);
}

StepOutcome disex_step(const DisrkScheme& scheme, const PoissonSystem& system,
                       const State& state, double h,
                       const SolverConfig& config) {
    StepOutcome total;
    State current = state;
    for (int i = 0; i < scheme.stages(); ++i) {
        StepOutcome sub =
            exp_midpoint_step(system, current, scheme.weight(i) * h, config);
        total.iterations += sub.iterations;
        total.residual = std::max(total.residual, sub.residual);
        if (!sub.converged) {
            total.state = current;
            total.failed_substage = i;
            return total;
        }
        current = sub.state;
    }
    current.t = state.t + h;  // avoid drift from summing substep times
    total.state = std::move(current);
    total.converged = true;
    return total;
}

StepOutcome energy_exp_step(const PoissonSystem& system, const State& state,
                            double h, const SolverConfig& config) {
    const Vector& q = state.q;
    Vector sq = system.apply_expA(h, q);
    auto map = [&](const Vector& x) -> Vector {
        return sq + system.apply_intExpA(
                        h, system.apply_J(system.discrete_grad_V(q, x)));
    };
    Vector guess = exp_euler_value(system, q, h);
    return from_solve(fixed_point_solve(map, guess, config), state.t + h);
}

}  // namespace expint
