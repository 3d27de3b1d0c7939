#include "hbsumma/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

namespace hbsumma {

using Complex = std::complex<double>;

Eigen::VectorXcd polynomial_roots(const Eigen::VectorXcd& coeffs) {
    Eigen::Index deg = coeffs.size() - 1;
    while (deg > 0 && coeffs[deg] == Complex(0.0)) --deg;
    if (deg == 0) return Eigen::VectorXcd(0);
    if (deg > 2048) throw std::invalid_argument("polynomial_roots: degree too large");

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = Complex(1.0);
    const Complex lead = coeffs[deg];
    for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / lead;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("polynomial_roots: eigensolver failed to converge");

    std::vector<Complex> roots(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + deg);
    std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax < ay;
        return std::arg(x) < std::arg(y);
    });
    return Eigen::Map<Eigen::VectorXcd>(roots.data(), deg);
}

Complex polish_root(const Eigen::VectorXcd& coeffs, Complex z0, int iters) {
    Complex z = z0;
    for (int it = 0; it < iters; ++it) {
        Complex p(0.0), dp(0.0);
        for (Eigen::Index n = coeffs.size() - 1; n >= 0; --n) {
            dp = dp * z + p;
            p = p * z + coeffs[n];
        }
        if (dp == Complex(0.0)) break;
        const Complex step = p / dp;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        if (std::abs(step) > 0.5 * (1.0 + std::abs(z))) break;
        z -= step;
    }
    return z;
}

}  // namespace hbsumma
