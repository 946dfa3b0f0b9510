#include "expint/psystem.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace expint {

State::State(Vector values, double time) : q(std::move(values)), t(time) {
    if (!q.allFinite())
        throw ShapeError("State: non-finite entries");
}

double PoissonSystem::hamiltonian(const Vector& q) const {
    return 0.5 * q.dot(apply_D(q)) + V(q);
}

Matrix PoissonSystem::hess_V(const Vector& q) const {
    const int d = dim();
    const double eps = 1e-6;
    Matrix h(d, d);
    Vector probe = q;
    for (int j = 0; j < d; ++j) {
        probe[j] = q[j] + eps;
        Vector gp = grad_V(probe);
        probe[j] = q[j] - eps;
        Vector gm = grad_V(probe);
        probe[j] = q[j];
        h.col(j) = (gp - gm) / (2.0 * eps);
    }
    // symmetrize away the finite-difference noise
    return 0.5 * (h + h.transpose());
}

DenseTestSystem::DenseTestSystem(Matrix j, Matrix d, double quartic_coeff)
    : j_(std::move(j)), d_(std::move(d)), quartic_(quartic_coeff) {
    if (j_.rows() != j_.cols() || d_.rows() != d_.cols() ||
        j_.rows() != d_.rows())
        throw ShapeError("DenseTestSystem: J and D must be square, same size");
}

double DenseTestSystem::V(const Vector& q) const {
    return 0.25 * quartic_ * q.array().pow(4).sum();
}

Vector DenseTestSystem::grad_V(const Vector& q) const {
    return quartic_ * q.array().cube().matrix();
}

Vector DenseTestSystem::discrete_grad_V(const Vector& q,
                                        const Vector& q2) const {
    // elementwise (q^3 + q^2 q' + q q'^2 + q'^3)/4 telescopes the quartic
    auto a = q.array();
    auto b = q2.array();
    return (quartic_ * 0.25 * (a.cube() + a.square() * b + a * b.square() +
                               b.cube())).matrix();
}

Vector DenseTestSystem::apply_expA(double h, const Vector& v) const {
    return (A_matrix() * h).exp() * v;
}

Vector DenseTestSystem::apply_intExpA(double h, const Vector& v) const {
    // top-right block of exp([[A, I], [0, 0]] h) is the integral of e^{A tau}
    const int d = dim();
    Matrix aug = Matrix::Zero(2 * d, 2 * d);
    aug.topLeftCorner(d, d) = A_matrix() * h;
    aug.topRightCorner(d, d) = Matrix::Identity(d, d) * h;
    return aug.exp().topRightCorner(d, d) * v;
}

Matrix DenseTestSystem::hess_V(const Vector& q) const {
    return (3.0 * quartic_ * q.array().square()).matrix().asDiagonal();
}

double StructureReport::worst() const {
    double w = 0.0;
    for (const auto& item : items) w = std::max(w, item.deviation);
    return w;
}

std::vector<std::string> StructureReport::failing(double tol) const {
    std::vector<std::string> names;
    for (const auto& item : items)
        if (item.deviation > tol) names.push_back(item.identity);
    return names;
}

StructureReport check_structure(const PoissonSystem& system, int trials,
                                unsigned seed) {
    const int d = system.dim();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto random_vector = [&] {
        Vector v(d);
        for (int i = 0; i < d; ++i) v[i] = unif(rng);
        return v;
    };

    StructureReport report;
    report.seed = seed;
    report.items.reserve(16);  // keep the references below valid
    auto item = [&report](const std::string& name) -> double& {
        report.items.push_back({name, 0.0});
        return report.items.back().deviation;
    };

    double& skew = item("J_skew");
    double& symmetric = item("D_symmetric");
    double& commute = item("JD_commute");
    double& ham = item("hamiltonian_split");
    double& dg_cond = item("dg_condition");
    double& dg_sym = item("dg_symmetry");
    double& dg_diag = item("dg_diagonal");
    double& exp_zero = item("expA_at_zero");
    double& int_zero = item("intExpA_at_zero");
    double& orth = item("S_orthogonal");
    double& at_id = item("AT_equals_S_minus_I");
    double& att_id = item("ATt_equals_I_minus_St");
    double& stt_id = item("StT_equals_Tt");

    const double steps[] = {0.01, 0.1, 1.0};
    for (int trial = 0; trial < trials; ++trial) {
        Vector u = random_vector();
        Vector v = random_vector();
        double un = u.norm(), vn = v.norm();

        skew = std::max(skew, std::abs(u.dot(system.apply_J(v)) +
                                       system.apply_J(u).dot(v)) / (un * vn));
        symmetric = std::max(
            symmetric, std::abs(u.dot(system.apply_D(v)) -
                                system.apply_D(u).dot(v)) / (un * vn));
        commute = std::max(
            commute, (system.apply_J(system.apply_D(v)) -
                      system.apply_D(system.apply_J(v))).norm() / vn);

        double h_direct = system.hamiltonian(v);
        double h_split = 0.5 * v.dot(system.apply_D(v)) + system.V(v);
        ham = std::max(ham, std::abs(h_direct - h_split) /
                                std::max(1.0, std::abs(h_direct)));

        Vector dg = system.discrete_grad_V(u, v);
        double lhs = dg.dot(v - u);
        double rhs = system.V(v) - system.V(u);
        dg_cond = std::max(dg_cond, std::abs(lhs - rhs) /
                                        std::max(1.0, std::abs(rhs)));
        dg_sym = std::max(
            dg_sym, (dg - system.discrete_grad_V(v, u)).norm() /
                        std::max(1.0, dg.norm()));
        Vector g = system.grad_V(v);
        dg_diag = std::max(dg_diag,
                           (system.discrete_grad_V(v, v) - g).norm() /
                               std::max(1.0, g.norm()));

        exp_zero = std::max(exp_zero,
                            (system.apply_expA(0.0, v) - v).norm() / vn);
        int_zero = std::max(int_zero,
                            system.apply_intExpA(0.0, v).norm() / vn);

        for (double h : steps) {
            Vector sv = system.apply_expA(h, v);
            Vector su = system.apply_expA(h, u);
            orth = std::max(orth,
                            std::abs(sv.dot(su) - v.dot(u)) / (un * vn));

            Vector tv = system.apply_intExpA(h, v);
            Vector atv = system.apply_J(system.apply_D(tv));
            at_id = std::max(at_id, (atv - (sv - v)).norm() / vn);

            // T^T = S^T T and S^T = e^{-Ah}
            Vector ttv = system.apply_expA(-h, tv);
            Vector attv = system.apply_J(system.apply_D(ttv));
            Vector stv = system.apply_expA(-h, v);
            att_id = std::max(att_id, (attv - (v - stv)).norm() / vn);

            // S^T T v computed independently of the T^T realization:
            // int_0^h e^{-A tau} dtau = -int_0^{-h} e^{A sigma} dsigma
            Vector tt_direct = -system.apply_intExpA(-h, v);
            stt_id = std::max(stt_id, (ttv - tt_direct).norm() / vn);
        }
    }
    return report;
}

Matrix dense_from_action(const std::function<Vector(const Vector&)>& action,
                         int dim) {
    Matrix m(dim, dim);
    Vector e = Vector::Zero(dim);
    for (int j = 0; j < dim; ++j) {
        e[j] = 1.0;
        m.col(j) = action(e);
        e[j] = 0.0;
    }
    return m;
}

}  // namespace expint
