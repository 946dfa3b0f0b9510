#include "expint/spectral.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>

#include <fftw3.h>

namespace expint {

namespace {

// The FFTW planner is not thread safe; plan creation and destruction are
// serialized. Execution uses per-thread plans and buffers.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    int n = 0;
    fftw_complex* buf = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit PlanPair(int size) : n(size) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        buf = fftw_alloc_complex(static_cast<size_t>(n));
        forward = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~PlanPair() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(buf);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
};

PlanPair& plans_for(int n) {
    thread_local std::unordered_map<int, std::unique_ptr<PlanPair>> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<PlanPair>(n)).first;
    return *it->second;
}

// In-place unnormalized transform of a length-N complex vector.
void transform(Eigen::VectorXcd& data, bool forward) {
    const int n = static_cast<int>(data.size());
    PlanPair& p = plans_for(n);
    for (int i = 0; i < n; ++i) {
        p.buf[i][0] = data[i].real();
        p.buf[i][1] = data[i].imag();
    }
    fftw_execute(forward ? p.forward : p.backward);
    for (int i = 0; i < n; ++i) data[i] = Complex(p.buf[i][0], p.buf[i][1]);
}

}  // namespace

SpectralGrid::SpectralGrid(int num_nodes)
    : num_nodes_(num_nodes), half_modes_((num_nodes - 1) / 2) {
    if (num_nodes < 3 || num_nodes % 2 == 0)
        throw ShapeError("SpectralGrid: size must be odd and >= 3");
}

Eigen::VectorXd SpectralGrid::nodes() const {
    Eigen::VectorXd x(num_nodes_);
    for (int j = 0; j < num_nodes_; ++j) x[j] = node(j);
    return x;
}

int SpectralGrid::wavenumber(int index) const {
    return index <= half_modes_ ? index : index - num_nodes_;
}

int SpectralGrid::index_of(int k) const {
    return k >= 0 ? k : k + num_nodes_;
}

Spectrum::Spectrum(const SpectralGrid& grid, Eigen::VectorXcd data)
    : data_(std::move(data)), half_modes_(grid.half_modes()) {
    if (data_.size() != grid.size())
        throw ShapeError("Spectrum: length does not match grid");
}

int Spectrum::grid_index(int k) const {
    return k >= 0 ? k : k + static_cast<int>(data_.size());
}

double Spectrum::conjugate_asymmetry() const {
    double scale = data_.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int k = 1; k <= half_modes_; ++k) {
        worst = std::max(worst,
                         std::abs(coeff(-k) - std::conj(coeff(k))));
    }
    return worst / scale;
}

SpectralSymbol SpectralSymbol::identity() {
    return {[](int) { return Complex(1.0, 0.0); }, "identity"};
}

SpectralSymbol SpectralSymbol::derivative(int order) {
    switch (order) {
        case 1:
            return {[](int k) { return Complex(0.0, k); }, "D1"};
        case 2:
            return {[](int k) { return Complex(-double(k) * k, 0.0); }, "D2"};
        case 3:
            return {[](int k) { return Complex(0.0, -double(k) * k * k); },
                    "D3"};
        default:
            throw ShapeError("SpectralSymbol: order must be 1, 2 or 3");
    }
}

SpectralSymbol SpectralSymbol::function_of_derivative(
    int order, std::function<Complex(Complex)> f, const std::string& tag) {
    SpectralSymbol base = derivative(order);
    auto rule = [base, f = std::move(f)](int k) { return f(base.eigenvalue(k)); };
    return {rule, tag};
}

Spectrum dft(const SpectralGrid& grid, const Eigen::VectorXcd& values) {
    if (values.size() != grid.size())
        throw ShapeError("dft: input length does not match grid");
    Eigen::VectorXcd data = values;
    transform(data, true);
    data /= static_cast<double>(grid.size());
    return Spectrum(grid, std::move(data));
}

Spectrum dft_real(const SpectralGrid& grid, const Eigen::VectorXd& values) {
    return dft(grid, values.cast<Complex>());
}

Eigen::VectorXcd idft(const SpectralGrid& grid, const Spectrum& spectrum) {
    if (spectrum.size() != grid.size())
        throw ShapeError("idft: spectrum length does not match grid");
    Eigen::VectorXcd data = spectrum.raw();
    transform(data, false);
    return data;
}

Eigen::MatrixXd dense_diff_matrix(const SpectralGrid& grid, int order) {
    const int n = grid.size();
    const int half = grid.half_modes();
    const double h = grid.spacing();
    Eigen::MatrixXd m(n, n);
    if (order == 1) {
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                if (k == j) {
                    m(k, j) = 0.0;
                } else {
                    double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
                    m(k, j) = sign / (2.0 * std::sin((k - j) * h / 2.0));
                }
            }
        return m;
    }
    if (order == 2) {
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                if (k == j) {
                    m(k, j) = -double(half) * (half + 1) / 3.0;
                } else {
                    double sign = ((k - j) % 2 == 0) ? -1.0 : 1.0;
                    double s = std::sin((k - j) * h / 2.0);
                    m(k, j) = sign * std::cos((k - j) * h / 2.0) / (2.0 * s * s);
                }
            }
        return m;
    }
    if (order == 3)
        return dense_diff_matrix(grid, 1) * dense_diff_matrix(grid, 2);
    throw ShapeError("dense_diff_matrix: order must be 1, 2 or 3");
}

Eigen::VectorXd apply_symbol(const SpectralGrid& grid,
                             const SpectralSymbol& symbol,
                             const Eigen::VectorXd& v) {
    if (v.size() != grid.size())
        throw ShapeError("apply_symbol: input length does not match grid");
    Eigen::VectorXcd data = v.cast<Complex>();
    transform(data, true);
    for (int i = 0; i < grid.size(); ++i)
        data[i] *= symbol.eigenvalue(grid.wavenumber(i));
    transform(data, false);
    data /= static_cast<double>(grid.size());

    double real_norm = data.real().norm();
    double imag_norm = data.imag().norm();
    double scale = std::max(real_norm, v.norm());
    if (imag_norm > 1e-10 * std::max(scale, 1e-300))
        throw SymbolError("apply_symbol: symbol '" + symbol.tag +
                          "' produced a non-real result");
    return data.real();
}

Complex phi1(Complex z) {
    if (std::abs(z) < 1e-4) {
        // Sum_{m=0..10} z^m/(m+1)!; truncation below 1e-16 at this cutoff.
        Complex acc(0.0, 0.0);
        Complex power(1.0, 0.0);
        double factorial = 1.0;
        for (int m = 0; m <= 10; ++m) {
            factorial *= (m + 1);
            acc += power / factorial;
            power *= z;
        }
        return acc;
    }
    return (std::exp(z) - 1.0) / z;
}

}  // namespace expint
