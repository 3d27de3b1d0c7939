#pragma once

#include <Eigen/Core>

#include "hbsumma/series.hpp"

namespace hbsumma {

constexpr bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

// Radix-2 decimation-in-time FFT, X_k = sum_j x_j exp(-2*pi*i*j*k/N).
// N must be a power of two.
Eigen::VectorXcd fft(Eigen::VectorXcd x);
Eigen::VectorXcd fft(const Eigen::VectorXd& x);

}  // namespace hbsumma
