#ifndef EXPINT_MODELS_HPP
#define EXPINT_MODELS_HPP

#include "expint/psystem.hpp"
#include "expint/spectral.hpp"

namespace expint {

enum class ModelKind { Nls, Kdv };

/// Pseudospectral nonlinear Schroedinger semi-discretization. The state is
/// z = (q | p) of length 2N with q = Re psi, p = Im psi at the nodes;
/// J = [[0, I], [-I, 0]], D = diag(-D2, -D2), V = 1/2 sum (q^2 + p^2)^2.
class NlsSystem : public PoissonSystem {
public:
    explicit NlsSystem(SpectralGrid grid, bool with_potential = true);

    int dim() const override { return 2 * grid_.size(); }
    const SpectralGrid& grid() const { return grid_; }

    Vector apply_J(const Vector& z) const override;
    Vector apply_D(const Vector& z) const override;
    double V(const Vector& z) const override;
    Vector grad_V(const Vector& z) const override;
    Vector discrete_grad_V(const Vector& z, const Vector& z2) const override;
    Vector apply_expA(double h, const Vector& z) const override;
    Vector apply_intExpA(double h, const Vector& z) const override;
    Matrix hess_V(const Vector& z) const override;

private:
    // per Fourier mode, the block [[Re c, -Im c], [Im c, Re c]] applied to
    // (qhat, phat); c = e^{-i k^2 h} for the exponential and
    // c = h phi1(-i k^2 h) for its integral
    Vector apply_mode_factor(const Vector& z,
                             const std::function<Complex(int)>& factor) const;

    SpectralGrid grid_;
    bool with_potential_;
};

/// Pseudospectral KdV semi-discretization, u_t + u u_x + nu u_xxx = 0:
/// J = -D1, D = nu D2, A = -nu D3, grad V = q^2 / 2.
class KdvSystem : public PoissonSystem {
public:
    explicit KdvSystem(SpectralGrid grid, double nu = 5e-4,
                       bool with_potential = true);

    int dim() const override { return grid_.size(); }
    const SpectralGrid& grid() const { return grid_; }
    double nu() const { return nu_; }

    Vector apply_J(const Vector& q) const override;
    Vector apply_D(const Vector& q) const override;
    double V(const Vector& q) const override;
    Vector grad_V(const Vector& q) const override;
    Vector discrete_grad_V(const Vector& q, const Vector& q2) const override;
    Vector apply_expA(double h, const Vector& q) const override;
    Vector apply_intExpA(double h, const Vector& q) const override;
    Matrix hess_V(const Vector& q) const override;

private:
    SpectralGrid grid_;
    double nu_;
    bool with_potential_;
};

/// Deterministic smooth initial data used by every experiment:
/// NLS: q = 1.3 + 0.3 cos x, p = 0; KdV: q = 0.25 cos x (the largest
/// single-mode amplitude the desk-scale grids keep resolved over the
/// long conservation runs).
State standard_initial_condition(ModelKind kind, const SpectralGrid& grid);

}  // namespace expint

#endif
