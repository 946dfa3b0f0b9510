#include "expint/models.hpp"

#include <cmath>

namespace expint {

namespace {

void require_length(const Vector& v, int expected, const char* what) {
    if (v.size() != expected) throw ShapeError(std::string(what) +
                                               ": wrong state length");
}

}  // namespace

NlsSystem::NlsSystem(SpectralGrid grid, bool with_potential)
    : grid_(grid), with_potential_(with_potential) {}

Vector NlsSystem::apply_J(const Vector& z) const {
    require_length(z, dim(), "NlsSystem::apply_J");
    const int n = grid_.size();
    Vector out(2 * n);
    out.head(n) = z.tail(n);
    out.tail(n) = -z.head(n);
    return out;
}

Vector NlsSystem::apply_D(const Vector& z) const {
    require_length(z, dim(), "NlsSystem::apply_D");
    const int n = grid_.size();
    // D = diag(-D2, -D2); -D2 has symbol k^2
    SpectralSymbol neg_d2{[](int k) { return Complex(double(k) * k, 0.0); },
                          "-D2"};
    Vector out(2 * n);
    out.head(n) = apply_symbol(grid_, neg_d2, z.head(n));
    out.tail(n) = apply_symbol(grid_, neg_d2, z.tail(n));
    return out;
}

double NlsSystem::V(const Vector& z) const {
    require_length(z, dim(), "NlsSystem::V");
    if (!with_potential_) return 0.0;
    const int n = grid_.size();
    auto q = z.head(n).array();
    auto p = z.tail(n).array();
    return 0.5 * (q.square() + p.square()).square().sum();
}

Vector NlsSystem::grad_V(const Vector& z) const {
    require_length(z, dim(), "NlsSystem::grad_V");
    const int n = grid_.size();
    Vector out = Vector::Zero(2 * n);
    if (!with_potential_) return out;
    auto q = z.head(n).array();
    auto p = z.tail(n).array();
    auto r2 = q.square() + p.square();
    out.head(n) = (2.0 * r2 * q).matrix();
    out.tail(n) = (2.0 * r2 * p).matrix();
    return out;
}

Vector NlsSystem::discrete_grad_V(const Vector& z, const Vector& z2) const {
    require_length(z, dim(), "NlsSystem::discrete_grad_V");
    require_length(z2, dim(), "NlsSystem::discrete_grad_V");
    const int n = grid_.size();
    Vector out = Vector::Zero(2 * n);
    if (!with_potential_) return out;
    auto q = z.head(n).array(), p = z.tail(n).array();
    auto q2 = z2.head(n).array(), p2 = z2.tail(n).array();
    auto q_mid = 0.5 * (q + q2);
    auto p_mid = 0.5 * (p + p2);
    auto q_sq_mid = 0.5 * (q.square() + q2.square());
    auto p_sq_mid = 0.5 * (p.square() + p2.square());
    out.head(n) = (2.0 * (q_sq_mid + p_sq_mid) * q_mid).matrix();
    out.tail(n) = (2.0 * (q_sq_mid + p_sq_mid) * p_mid).matrix();
    return out;
}

Vector NlsSystem::apply_mode_factor(
    const Vector& z, const std::function<Complex(int)>& factor) const {
    const int n = grid_.size();
    Spectrum qhat = dft_real(grid_, z.head(n));
    Spectrum phat = dft_real(grid_, z.tail(n));
    for (int i = 0; i < n; ++i) {
        Complex c = factor(grid_.wavenumber(i));
        Complex qh = qhat.raw()[i];
        Complex ph = phat.raw()[i];
        qhat.raw()[i] = c.real() * qh - c.imag() * ph;
        phat.raw()[i] = c.imag() * qh + c.real() * ph;
    }
    Vector out(2 * n);
    out.head(n) = idft(grid_, qhat).real();
    out.tail(n) = idft(grid_, phat).real();
    return out;
}

Vector NlsSystem::apply_expA(double h, const Vector& z) const {
    require_length(z, dim(), "NlsSystem::apply_expA");
    return apply_mode_factor(z, [h](int k) {
        double theta = double(k) * k * h;
        return Complex(std::cos(theta), -std::sin(theta));
    });
}

Vector NlsSystem::apply_intExpA(double h, const Vector& z) const {
    require_length(z, dim(), "NlsSystem::apply_intExpA");
    return apply_mode_factor(z, [h](int k) {
        return h * phi1(Complex(0.0, -double(k) * k * h));
    });
}

Matrix NlsSystem::hess_V(const Vector& z) const {
    const int n = grid_.size();
    Matrix hess = Matrix::Zero(2 * n, 2 * n);
    if (!with_potential_) return hess;
    for (int j = 0; j < n; ++j) {
        double q = z[j], p = z[n + j];
        hess(j, j) = 2.0 * (3.0 * q * q + p * p);
        hess(n + j, n + j) = 2.0 * (q * q + 3.0 * p * p);
        hess(j, n + j) = hess(n + j, j) = 4.0 * q * p;
    }
    return hess;
}

KdvSystem::KdvSystem(SpectralGrid grid, double nu, bool with_potential)
    : grid_(grid), nu_(nu), with_potential_(with_potential) {
    if (nu <= 0.0) throw ShapeError("KdvSystem: nu must be positive");
}

Vector KdvSystem::apply_J(const Vector& q) const {
    require_length(q, dim(), "KdvSystem::apply_J");
    SpectralSymbol neg_d1{[](int k) { return Complex(0.0, -double(k)); },
                          "-D1"};
    return apply_symbol(grid_, neg_d1, q);
}

Vector KdvSystem::apply_D(const Vector& q) const {
    require_length(q, dim(), "KdvSystem::apply_D");
    double nu = nu_;
    SpectralSymbol nu_d2{[nu](int k) { return Complex(-nu * k * k, 0.0); },
                         "nu*D2"};
    return apply_symbol(grid_, nu_d2, q);
}

double KdvSystem::V(const Vector& q) const {
    require_length(q, dim(), "KdvSystem::V");
    if (!with_potential_) return 0.0;
    return q.array().cube().sum() / 6.0;
}

Vector KdvSystem::grad_V(const Vector& q) const {
    require_length(q, dim(), "KdvSystem::grad_V");
    if (!with_potential_) return Vector::Zero(dim());
    return (0.5 * q.array().square()).matrix();
}

Vector KdvSystem::discrete_grad_V(const Vector& q, const Vector& q2) const {
    require_length(q, dim(), "KdvSystem::discrete_grad_V");
    require_length(q2, dim(), "KdvSystem::discrete_grad_V");
    if (!with_potential_) return Vector::Zero(dim());
    auto a = q.array();
    auto b = q2.array();
    return ((a.square() + a * b + b.square()) / 6.0).matrix();
}

Vector KdvSystem::apply_expA(double h, const Vector& q) const {
    require_length(q, dim(), "KdvSystem::apply_expA");
    double nu = nu_;
    // A = -nu D3 has symbol i nu k^3
    SpectralSymbol sym{[nu, h](int k) {
                           double theta = nu * double(k) * k * k * h;
                           return Complex(std::cos(theta), std::sin(theta));
                       },
                       "exp(-nu*D3*h)"};
    return apply_symbol(grid_, sym, q);
}

Vector KdvSystem::apply_intExpA(double h, const Vector& q) const {
    require_length(q, dim(), "KdvSystem::apply_intExpA");
    double nu = nu_;
    SpectralSymbol sym{[nu, h](int k) {
                           return h * phi1(Complex(0.0,
                                                   nu * double(k) * k * k * h));
                       },
                       "int exp(-nu*D3*tau)"};
    return apply_symbol(grid_, sym, q);
}

Matrix KdvSystem::hess_V(const Vector& q) const {
    if (!with_potential_) return Matrix::Zero(dim(), dim());
    return q.asDiagonal();
}

State standard_initial_condition(ModelKind kind, const SpectralGrid& grid) {
    const int n = grid.size();
    if (kind == ModelKind::Kdv) {
        Vector q(n);
        for (int j = 0; j < n; ++j) q[j] = 0.25 * std::cos(grid.node(j));
        return State(std::move(q), 0.0);
    }
    Vector z = Vector::Zero(2 * n);
    for (int j = 0; j < n; ++j) z[j] = 1.3 + 0.3 * std::cos(grid.node(j));
    return State(std::move(z), 0.0);
}

}  // namespace expint
