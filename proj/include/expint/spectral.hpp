#ifndef EXPINT_SPECTRAL_HPP
#define EXPINT_SPECTRAL_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace expint {

using Complex = std::complex<double>;

class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SymbolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Equispaced periodic grid on [0, 2*pi) with an odd number of nodes
/// N = 2n+1, so the wavenumbers -n..n are symmetric about zero.
class SpectralGrid {
public:
    explicit SpectralGrid(int num_nodes);

    int size() const { return num_nodes_; }
    int half_modes() const { return half_modes_; }   // n = (N-1)/2
    double spacing() const { return 2.0 * pi() / num_nodes_; }
    double node(int j) const { return j * spacing(); }
    Eigen::VectorXd nodes() const;

    /// Logical wavenumber of FFT-natural storage index 0..N-1
    /// (0,1,..,n,-n,..,-1).
    int wavenumber(int index) const;
    /// Inverse map: storage index of wavenumber k in [-n, n].
    int index_of(int k) const;

    static double pi() { return 3.14159265358979323846; }

private:
    int num_nodes_;
    int half_modes_;
};

/// Fourier coefficients of a grid function, stored in FFT-natural order
/// (k = 0..n then -n..-1); coeff() exposes the logical wavenumber.
class Spectrum {
public:
    Spectrum(const SpectralGrid& grid, Eigen::VectorXcd data);

    int size() const { return static_cast<int>(data_.size()); }
    Complex& coeff(int k) { return data_[grid_index(k)]; }
    const Complex& coeff(int k) const { return data_[grid_index(k)]; }
    Eigen::VectorXcd& raw() { return data_; }
    const Eigen::VectorXcd& raw() const { return data_; }

    /// Largest violation of coeff(-k) == conj(coeff(k)), relative to the
    /// coefficient scale; zero for the spectrum of a real grid function.
    double conjugate_asymmetry() const;

private:
    int grid_index(int k) const;
    Eigen::VectorXcd data_;
    int half_modes_;
};

/// Eigenvalue rule lambda(k) of an operator diagonal in the Fourier basis.
struct SpectralSymbol {
    std::function<Complex(int)> eigenvalue;
    std::string tag;

    static SpectralSymbol identity();
    static SpectralSymbol derivative(int order);          // ik, -k^2, -ik^3
    /// f applied to the derivative symbol of the given order.
    static SpectralSymbol function_of_derivative(
        int order, std::function<Complex(Complex)> f, const std::string& tag);
};

/// Forward transform with the 1/N normalization on the forward side, so
/// coeff(k) matches the trigonometric interpolation coefficients directly.
Spectrum dft(const SpectralGrid& grid, const Eigen::VectorXcd& values);
Spectrum dft_real(const SpectralGrid& grid, const Eigen::VectorXd& values);

/// Nodal values of the interpolant; exact inverse of dft.
Eigen::VectorXcd idft(const SpectralGrid& grid, const Spectrum& spectrum);

/// Dense nodal differentiation matrix of order 1, 2 or 3 (3 = D1*D2).
Eigen::MatrixXd dense_diff_matrix(const SpectralGrid& grid, int order);

/// F^{-1}[diag(lambda(k)) F[v]] for real v. The symbol must satisfy
/// lambda(-k) = conj(lambda(k)); the imaginary residue is checked against
/// 1e-10 of the output scale and then discarded.
Eigen::VectorXd apply_symbol(const SpectralGrid& grid,
                             const SpectralSymbol& symbol,
                             const Eigen::VectorXd& v);

/// phi1(z) = (e^z - 1)/z, with a Taylor series below |z| = 1e-4.
Complex phi1(Complex z);

}  // namespace expint

#endif
