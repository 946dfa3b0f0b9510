#include "expint/verify.hpp"

#include <algorithm>
#include <cmath>

namespace expint {

double poisson_check(const StepMap& step,
                     const std::function<Vector(const Vector&)>& j_action,
                     const Vector& q, double fd_eps) {
    if (fd_eps <= 0.0) throw ShapeError("poisson_check: fd_eps must be > 0");
    const int d = static_cast<int>(q.size());
    Matrix m(d, d);
    Vector probe = q;
    for (int j = 0; j < d; ++j) {
        probe[j] = q[j] + fd_eps;
        Vector fp = step(probe);
        probe[j] = q[j] - fd_eps;
        Vector fm = step(probe);
        probe[j] = q[j];
        m.col(j) = (fp - fm) / (2.0 * fd_eps);
    }
    Matrix jmat = dense_from_action(j_action, d);
    return (m * jmat * m.transpose() - jmat).cwiseAbs().maxCoeff();
}

std::pair<double, std::vector<double>> energy_drift(
    const PoissonSystem& system, const std::vector<Vector>& trajectory) {
    std::vector<double> series;
    series.reserve(trajectory.size());
    double h0 = 0.0;
    double worst = 0.0;
    for (size_t i = 0; i < trajectory.size(); ++i) {
        double h = system.hamiltonian(trajectory[i]);
        if (i == 0) h0 = h;
        double drift = std::abs(h - h0);
        series.push_back(drift);
        worst = std::max(worst, drift);
    }
    return {worst, std::move(series)};
}

DgCheckResult dg_condition_check(const PoissonSystem& system, const Vector& q,
                                 const Vector& q2) {
    DgCheckResult result;
    Vector delta = q2 - q;
    result.v_residual = std::abs(system.discrete_grad_V(q, q2).dot(delta) -
                                 (system.V(q2) - system.V(q)));
    Vector dg_h = system.apply_D(0.5 * (q + q2)) +
                  system.discrete_grad_V(q, q2);
    result.h_residual = std::abs(
        dg_h.dot(delta) - (system.hamiltonian(q2) - system.hamiltonian(q)));
    return result;
}

double loglog_slope(const std::vector<double>& x,
                    const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ShapeError("loglog_slope: need matching lists of >= 2 points");
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        double lx = std::log(x[i]);
        double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double estimate_order(const Stepper& method, const PoissonSystem& system,
                      const State& initial, double horizon,
                      const std::vector<double>& h_list,
                      const SolverConfig& config) {
    if (h_list.size() < 4)
        throw ShapeError("estimate_order: need at least 4 timesteps");
    double h_min = *std::min_element(h_list.begin(), h_list.end());

    auto run_to_horizon = [&](const Stepper& stepper, double h,
                              bool& ok) -> Vector {
        long steps = std::lround(horizon / h);
        double h_eff = horizon / double(steps);
        State s = initial;
        for (long i = 0; i < steps; ++i) {
            StepOutcome out = stepper(system, s, h_eff);
            if (!out.converged) {
                ok = false;
                return s.q;
            }
            s = out.state;
        }
        ok = true;
        return s.q;
    };

    Stepper reference = [&config](const PoissonSystem& sys, const State& st,
                                  double h) {
        return exp_midpoint_step(sys, st, h, config);
    };
    bool ref_ok = false;
    Vector q_ref = run_to_horizon(reference, h_min / 20.0, ref_ok);
    if (!ref_ok)
        throw StepFailure("estimate_order: reference run did not converge");
    double ref_norm = std::max(q_ref.norm(), 1e-300);

    std::vector<double> hs;
    std::vector<double> errors;
    for (double h : h_list) {
        bool ok = false;
        Vector q_end = run_to_horizon(method, h, ok);
        if (!ok) continue;
        hs.push_back(h);
        errors.push_back((q_end - q_ref).norm() / ref_norm);
    }
    if (hs.size() < 3)
        throw StepFailure(
            "estimate_order: fewer than 3 timesteps survived");
    return loglog_slope(hs, errors);
}

SweepResult sweep_max_timestep(const std::string& method_id,
                               const Stepper& method,
                               const PoissonSystem& system,
                               const State& initial,
                               const std::vector<double>& h_grid,
                               int horizon_steps) {
    SweepResult result;
    result.method = method_id;
    result.resolution = system.dim();
    for (double h : h_grid) {
        SweepPoint point;
        point.h = h;
        point.converged = true;
        State s = initial;
        for (int i = 0; i < horizon_steps; ++i) {
            StepOutcome out = method(system, s, h);
            point.max_iterations_observed =
                std::max(point.max_iterations_observed, out.iterations);
            if (!out.converged) {
                point.converged = false;
                break;
            }
            s = out.state;
        }
        result.points.push_back(point);
        if (!point.converged) break;  // keep the reported h_max monotone
        result.h_max = h;
    }
    return result;
}

std::vector<double> decade_grid(double lo, double hi) {
    static const int mantissas[] = {1, 2, 4, 5, 6, 8};
    std::vector<double> grid;
    int e = static_cast<int>(std::floor(std::log10(lo)));
    for (; std::pow(10.0, e) <= hi * 1.000001; ++e) {
        for (int m : mantissas) {
            double v = m * std::pow(10.0, e);
            if (v >= lo * 0.999999 && v <= hi * 1.000001) grid.push_back(v);
        }
    }
    return grid;
}

StepOutcome disex_tableau_step(const DisrkScheme& scheme,
                               const PoissonSystem& system,
                               const State& state, double h,
                               const SolverConfig& config) {
    const Vector& q = state.q;
    const int s = scheme.stages();
    std::vector<Vector> stage_rhs;  // f(Q_j)
    stage_rhs.reserve(s);
    StepOutcome total;

    for (int i = 0; i < s; ++i) {
        double ci = scheme.abscissa(i);
        Vector base = system.apply_expA(h * ci, q);
        for (int j = 0; j < i; ++j) {
            double cj = scheme.abscissa(j);
            base += h * scheme.weight(j) *
                    system.apply_expA(h * (ci - cj), stage_rhs[j]);
        }
        double diag = 0.5 * scheme.weight(i);
        auto map = [&](const Vector& x) -> Vector {
            return base + h * diag * system.nonlinear_rhs(x);
        };
        SolveResult solve = fixed_point_solve(map, base, config);
        total.iterations += solve.iterations;
        total.residual = std::max(total.residual, solve.residual);
        if (!solve.converged) {
            total.failed_substage = i;
            total.state = state;
            return total;
        }
        stage_rhs.push_back(system.nonlinear_rhs(solve.x));
    }

    Vector next = system.apply_expA(h, q);
    for (int i = 0; i < s; ++i) {
        double ci = scheme.abscissa(i);
        next += h * scheme.weight(i) *
                system.apply_expA(h * (1.0 - ci), stage_rhs[i]);
    }
    total.state = State(std::move(next), state.t + h);
    total.converged = true;
    return total;
}

}  // namespace expint
