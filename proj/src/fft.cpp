#include "hbsumma/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hbsumma {

Eigen::VectorXcd fft(Eigen::VectorXcd x) {
    const Index n = x.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft: length must be a power of two");

    // Bit-reversal permutation.
    for (Index i = 1, j = 0; i < n; ++i) {
        Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    Eigen::VectorXcd tw(n / 2 > 0 ? n / 2 : 1);
    for (Index len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / double(len);
        for (Index k = 0; k < len / 2; ++k)
            tw[k] = Complex(std::cos(ang * double(k)), std::sin(ang * double(k)));
        for (Index i = 0; i < n; i += len) {
            for (Index k = 0; k < len / 2; ++k) {
                const Complex u = x[i + k];
                const Complex v = x[i + k + len / 2] * tw[k];
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
            }
        }
    }
    return x;
}

Eigen::VectorXcd fft(const Eigen::VectorXd& x) {
    return fft(Eigen::VectorXcd(x.cast<Complex>()));
}

}  // namespace hbsumma
