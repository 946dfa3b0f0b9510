#ifndef EXPINT_SOLVERS_HPP
#define EXPINT_SOLVERS_HPP

#include <functional>

#include <Eigen/Dense>

namespace expint {

struct SolverConfig {
    double tolerance = 1e-12;          // infinity norm of successive updates
    int max_iterations = 100;
    double divergence_factor = 1e6;    // vs the initial update size

    void validate() const;
};

struct SolveResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Iterates x <- map(x) until the update drops below tolerance, the
/// iteration budget runs out, or the update exceeds divergence_factor
/// times the initial one (non-finite iterates count as divergence).
SolveResult fixed_point_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map,
    const Eigen::VectorXd& guess, const SolverConfig& config);

/// Full-step Newton with a dense LU factorization per iteration; converged
/// when the residual infinity norm drops below tolerance.
SolveResult newton_solve(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& jacobian,
    const Eigen::VectorXd& guess, const SolverConfig& config);

}  // namespace expint

#endif
