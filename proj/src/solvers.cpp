#include "expint/solvers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace expint {

void SolverConfig::validate() const {
    if (tolerance <= 0.0)
        throw std::invalid_argument("SolverConfig: tolerance must be > 0");
    if (max_iterations < 1)
        throw std::invalid_argument("SolverConfig: max_iterations must be >= 1");
}

SolveResult fixed_point_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map,
    const Eigen::VectorXd& guess, const SolverConfig& config) {
    config.validate();
    SolveResult result;
    result.x = guess;
    double initial_update = -1.0;
    double prev_update = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= config.max_iterations; ++it) {
        Eigen::VectorXd next = map(result.x);
        result.iterations = it;
        if (!next.allFinite()) {
            result.residual = std::numeric_limits<double>::infinity();
            return result;
        }
        double update = (next - result.x).lpNorm<Eigen::Infinity>();
        result.x = std::move(next);
        result.residual = update;
        if (initial_update < 0.0)
            initial_update = std::max(update, 1e-300);
        // round-off floor: once updates stop shrinking at a few hundred eps
        // of the iterate scale, tighter tolerances are unreachable
        double floor_level =
            512.0 * std::numeric_limits<double>::epsilon() *
            std::max(1.0, result.x.lpNorm<Eigen::Infinity>());
        if (update <= config.tolerance ||
            (update <= floor_level && update >= 0.5 * prev_update)) {
            result.converged = true;
            return result;
        }
        if (update > config.divergence_factor * initial_update)
            return result;
        prev_update = update;
    }
    return result;
}

SolveResult newton_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& jacobian,
    const Eigen::VectorXd& guess, const SolverConfig& config) {
    config.validate();
    SolveResult result;
    result.x = guess;
    for (int it = 1; it <= config.max_iterations; ++it) {
        Eigen::VectorXd r = residual(result.x);
        result.residual = r.lpNorm<Eigen::Infinity>();
        if (!std::isfinite(result.residual)) return result;
        if (result.residual <= config.tolerance) {
            result.converged = true;
            return result;
        }
        result.iterations = it;
        Eigen::MatrixXd jac = jacobian(result.x);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
        Eigen::VectorXd step = lu.solve(r);
        if (!step.allFinite())
            throw std::runtime_error("newton_solve: singular Jacobian");
        result.x -= step;
    }
    // final residual check after exhausting the budget
    double final_norm = residual(result.x).lpNorm<Eigen::Infinity>();
    result.residual = final_norm;
    result.converged = std::isfinite(final_norm) &&
                       final_norm <= config.tolerance;
    return result;
}

}  // namespace expint
