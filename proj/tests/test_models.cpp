#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "expint/models.hpp"

using namespace expint;

namespace {

Vector random_vec(int d, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Vector v(d);
    for (int i = 0; i < d; ++i) v[i] = unif(rng);
    return v;
}

Matrix dense_A(const PoissonSystem& sys) {
    return dense_from_action(
        [&](const Vector& v) { return sys.apply_J(sys.apply_D(v)); },
        sys.dim());
}

Matrix dense_intExpA(const Matrix& a, double h) {
    const int d = static_cast<int>(a.rows());
    Matrix aug = Matrix::Zero(2 * d, 2 * d);
    aug.topLeftCorner(d, d) = a * h;
    aug.topRightCorner(d, d) = Matrix::Identity(d, d) * h;
    return aug.exp().topRightCorner(d, d);
}

}  // namespace

TEST_CASE("NLS J action swaps the real and imaginary blocks") {
    SpectralGrid grid(11);
    NlsSystem sys(grid);
    Vector z = random_vec(22, 1u);
    Vector jz = sys.apply_J(z);
    CHECK((jz.head(11) - z.tail(11)).norm() == 0.0);
    CHECK((jz.tail(11) + z.head(11)).norm() == 0.0);
}

TEST_CASE("NLS D action is -D2 blockwise") {
    SpectralGrid grid(11);
    NlsSystem sys(grid);
    Eigen::MatrixXd d2 = dense_diff_matrix(grid, 2);
    Vector z = random_vec(22, 2u);
    Vector dz = sys.apply_D(z);
    CHECK((dz.head(11) + d2 * z.head(11)).norm() < 1e-10);
    CHECK((dz.tail(11) + d2 * z.tail(11)).norm() < 1e-10);
}

TEST_CASE("NLS potential and gradient") {
    SpectralGrid grid(11);
    NlsSystem sys(grid);
    Vector z = random_vec(22, 3u);
    auto q = z.head(11).array();
    auto p = z.tail(11).array();
    double v_expect = 0.5 * (q.square() + p.square()).square().sum();
    CHECK(sys.V(z) == doctest::Approx(v_expect).epsilon(1e-14));

    Vector g = sys.grad_V(z);
    Vector g_expect(22);
    g_expect.head(11) = (2.0 * (q.square() + p.square()) * q).matrix();
    g_expect.tail(11) = (2.0 * (q.square() + p.square()) * p).matrix();
    CHECK((g - g_expect).norm() < 1e-13);
}

TEST_CASE("NLS exp action rotates a single mode by k^2 h") {
    SpectralGrid grid(11);
    NlsSystem sys(grid);
    const double h = 0.37;
    Vector z = Vector::Zero(22);
    for (int j = 0; j < 11; ++j) z[j] = std::cos(grid.node(j));
    Vector out = sys.apply_expA(h, z);
    for (int j = 0; j < 11; ++j) {
        double c = std::cos(grid.node(j));
        CHECK(out[j] == doctest::Approx(std::cos(h) * c).epsilon(1e-12));
        CHECK(out[11 + j] ==
              doctest::Approx(-std::sin(h) * c).epsilon(1e-12));
    }
}

TEST_CASE("NLS exp action at h = 0 is the identity and is an isometry") {
    SpectralGrid grid(11);
    NlsSystem sys(grid);
    Vector z = random_vec(22, 4u);
    CHECK((sys.apply_expA(0.0, z) - z).norm() < 1e-14);
    CHECK(std::abs(sys.apply_expA(0.8, z).norm() - z.norm()) <
          1e-11 * z.norm());
}

TEST_CASE("NLS exp and integral actions match the dense oracle") {
    SpectralGrid grid(11);
    NlsSystem sys(grid);
    Matrix a = dense_A(sys);
    Vector z = random_vec(22, 5u);
    const double h = 0.13;
    CHECK((sys.apply_expA(h, z) - (a * h).exp() * z).norm() <
          1e-9 * z.norm());
    CHECK((sys.apply_intExpA(h, z) - dense_intExpA(a, h) * z).norm() <
          1e-9 * z.norm());
}

TEST_CASE("NLS integral action limits") {
    SpectralGrid grid(11);
    NlsSystem sys(grid);
    Vector z = random_vec(22, 6u);
    CHECK(sys.apply_intExpA(0.0, z).norm() == 0.0);

    // constant state lives in the k = 0 kernel: T z = h z
    Vector c(22);
    c.head(11).setConstant(0.7);
    c.tail(11).setConstant(-0.2);
    const double h = 0.25;
    CHECK((sys.apply_intExpA(h, c) - h * c).norm() < 1e-13);
}

TEST_CASE("NLS discrete gradient telescopes V and is symmetric") {
    SpectralGrid grid(11);
    NlsSystem sys(grid);
    Vector a = random_vec(22, 7u);
    Vector b = random_vec(22, 8u);
    double lhs = sys.discrete_grad_V(a, b).dot(b - a);
    double rhs = sys.V(b) - sys.V(a);
    double scale = std::max({1.0, std::abs(sys.V(a)), std::abs(sys.V(b))});
    CHECK(std::abs(lhs - rhs) < 1e-12 * scale);
    CHECK((sys.discrete_grad_V(a, b) - sys.discrete_grad_V(b, a)).norm() <
          1e-14);
    CHECK((sys.discrete_grad_V(a, a) - sys.grad_V(a)).norm() < 1e-13);
}

TEST_CASE("NLS analytic Hessian matches finite differences") {
    SpectralGrid grid(5);
    NlsSystem sys(grid);
    Vector z = random_vec(10, 9u);
    Matrix analytic = sys.hess_V(z);
    Matrix fd = sys.PoissonSystem::hess_V(z);
    CHECK((analytic - fd).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("KdV operator actions match the dense matrices") {
    SpectralGrid grid(11);
    const double nu = 1.0;
    KdvSystem sys(grid, nu);
    Eigen::MatrixXd d1 = dense_diff_matrix(grid, 1);
    Eigen::MatrixXd d2 = dense_diff_matrix(grid, 2);
    Vector q = random_vec(11, 10u);
    CHECK((sys.apply_J(q) + d1 * q).norm() < 1e-10);
    CHECK((sys.apply_D(q) - nu * d2 * q).norm() < 1e-10);
}

TEST_CASE("KdV potential, gradient, Hamiltonian") {
    SpectralGrid grid(11);
    const double nu = 5e-4;
    KdvSystem sys(grid, nu);
    Vector q = random_vec(11, 11u);
    CHECK(sys.V(q) ==
          doctest::Approx(q.array().cube().sum() / 6.0).epsilon(1e-13));
    CHECK((sys.grad_V(q) - (0.5 * q.array().square()).matrix()).norm() <
          1e-14);
    Eigen::MatrixXd d2 = dense_diff_matrix(grid, 2);
    double h_expect = 0.5 * nu * q.dot(d2 * q) + q.array().cube().sum() / 6.0;
    CHECK(sys.hamiltonian(q) == doctest::Approx(h_expect).epsilon(1e-10));
}

TEST_CASE("KdV exp action is unitary and matches the dense oracle") {
    SpectralGrid grid(11);
    KdvSystem sys(grid, 1.0);
    Vector q = random_vec(11, 12u);
    const double h = 0.05;
    CHECK((sys.apply_expA(0.0, q) - q).norm() < 1e-14);
    CHECK(std::abs(sys.apply_expA(h, q).norm() - q.norm()) <
          1e-12 * q.norm());

    Eigen::MatrixXd d3 = dense_diff_matrix(grid, 3);
    CHECK((sys.apply_expA(h, q) - (-d3 * h).exp() * q).norm() <
          1e-9 * q.norm());
    Matrix a = dense_A(sys);
    CHECK((sys.apply_intExpA(h, q) - dense_intExpA(a, h) * q).norm() <
          1e-9 * q.norm());
    CHECK(sys.apply_intExpA(0.0, q).norm() == 0.0);
}

TEST_CASE("KdV discrete gradient identity, including the scalar case") {
    // scalar: dg(1, 2) = (1 + 2 + 4)/6 = 7/6 telescopes V = q^3/6
    SpectralGrid grid(3);
    KdvSystem tiny(grid);
    Vector a = Vector::Zero(3), b = Vector::Zero(3);
    a[0] = 1.0;
    b[0] = 2.0;
    CHECK(tiny.discrete_grad_V(a, b)[0] ==
          doctest::Approx(7.0 / 6.0).epsilon(1e-15));
    CHECK(tiny.discrete_grad_V(a, b).dot(b - a) ==
          doctest::Approx(tiny.V(b) - tiny.V(a)).epsilon(1e-14));

    SpectralGrid grid31(31);
    KdvSystem sys(grid31);
    Vector u = random_vec(31, 13u);
    Vector w = random_vec(31, 14u);
    double lhs = sys.discrete_grad_V(u, w).dot(w - u);
    double rhs = sys.V(w) - sys.V(u);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
    CHECK((sys.discrete_grad_V(u, u) - sys.grad_V(u)).norm() < 1e-14);
}

TEST_CASE("KdV semi-discrete RHS matches the dense assembly") {
    SpectralGrid grid(31);
    const double nu = 5e-4;
    KdvSystem sys(grid, nu);
    Vector q(31);
    for (int j = 0; j < 31; ++j) q[j] = std::cos(grid.node(j));
    Eigen::MatrixXd d1 = dense_diff_matrix(grid, 1);
    Eigen::MatrixXd d2 = dense_diff_matrix(grid, 2);
    Vector expect =
        -d1 * (nu * d2 * q + (0.5 * q.array().square()).matrix());
    CHECK((sys.rhs(q) - expect).norm() < 1e-10 * expect.norm());
}

TEST_CASE("standard initial conditions") {
    SpectralGrid grid(11);
    State nls = standard_initial_condition(ModelKind::Nls, grid);
    CHECK(nls.q.size() == 22);
    CHECK(nls.q[0] == doctest::Approx(1.6).epsilon(1e-14));  // 1.3 + 0.3
    CHECK(nls.q.tail(11).norm() == 0.0);
    CHECK(nls.q.allFinite());

    State kdv = standard_initial_condition(ModelKind::Kdv, grid);
    CHECK(kdv.q.size() == 11);
    CHECK(std::abs(kdv.q.sum()) < 1e-12);  // cos sums to zero on the grid
    CHECK(kdv.q.cwiseAbs().maxCoeff() <= 1.0 + 1e-14);
    for (int j = 0; j < 11; ++j)
        CHECK(kdv.q[j] == doctest::Approx(0.25 * std::cos(grid.node(j))));
}
