#ifndef EXPINT_PSYSTEM_HPP
#define EXPINT_PSYSTEM_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "expint/spectral.hpp"

namespace expint {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Real coefficient vector of the semi-discretized solution plus model time.
struct State {
    Vector q;
    double t = 0.0;

    State() = default;
    State(Vector values, double time);
};

/// Semilinear Poisson system qdot = J(Dq + grad V(q)): everything an
/// integrator needs, expressed as actions so A = JD never has to be
/// materialized for spectral models.
class PoissonSystem {
public:
    virtual ~PoissonSystem() = default;

    virtual int dim() const = 0;
    virtual Vector apply_J(const Vector& v) const = 0;
    virtual Vector apply_D(const Vector& v) const = 0;
    virtual double V(const Vector& q) const = 0;
    virtual Vector grad_V(const Vector& q) const = 0;
    virtual Vector discrete_grad_V(const Vector& q, const Vector& q2) const = 0;
    /// Action of e^{Ah}, A = JD.
    virtual Vector apply_expA(double h, const Vector& v) const = 0;
    /// Action of T = int_0^h e^{A tau} dtau.
    virtual Vector apply_intExpA(double h, const Vector& v) const = 0;

    virtual double hamiltonian(const Vector& q) const;

    /// Nonlinear part of the vector field, f(q) = J grad V(q).
    Vector nonlinear_rhs(const Vector& q) const { return apply_J(grad_V(q)); }
    /// Full vector field J(Dq + grad V(q)).
    Vector rhs(const Vector& q) const {
        return apply_J(apply_D(q) + grad_V(q));
    }

    /// Hessian of V; the default is a central finite difference of grad_V,
    /// concrete systems override with the analytic form.
    virtual Matrix hess_V(const Vector& q) const;
};

/// Dense-matrix realization with a quartic potential, used as the oracle
/// backend in structure and integrator tests (dimension stays small).
class DenseTestSystem : public PoissonSystem {
public:
    DenseTestSystem(Matrix j, Matrix d, double quartic_coeff = 0.0);

    int dim() const override { return static_cast<int>(j_.rows()); }
    Vector apply_J(const Vector& v) const override { return j_ * v; }
    Vector apply_D(const Vector& v) const override { return d_ * v; }
    double V(const Vector& q) const override;
    Vector grad_V(const Vector& q) const override;
    Vector discrete_grad_V(const Vector& q, const Vector& q2) const override;
    Vector apply_expA(double h, const Vector& v) const override;
    Vector apply_intExpA(double h, const Vector& v) const override;
    Matrix hess_V(const Vector& q) const override;

    const Matrix& J_matrix() const { return j_; }
    const Matrix& D_matrix() const { return d_; }
    Matrix A_matrix() const { return j_ * d_; }

private:
    Matrix j_;
    Matrix d_;
    double quartic_;
};

/// Result of the randomized structure verification: per-identity maximum
/// relative deviations over all trials.
struct StructureReport {
    struct Item {
        std::string identity;
        double deviation = 0.0;
    };
    std::vector<Item> items;
    unsigned seed = 0;

    double worst() const;
    bool ok(double tol) const { return worst() <= tol; }
    std::vector<std::string> failing(double tol) const;
};

/// Randomized check of skewness, symmetry, commutation, the discrete
/// gradient condition and the S/T identities (orthogonality of S,
/// AT = S - I, AT^T = I - S^T, S^T T = T^T). Transpose actions are
/// realized with negative-h exponentials.
StructureReport check_structure(const PoissonSystem& system, int trials,
                                unsigned seed = 20240817u);

/// Dense matrix of a linear action, built column by column.
Matrix dense_from_action(const std::function<Vector(const Vector&)>& action,
                         int dim);

}  // namespace expint

#endif
