#pragma once

#include <Eigen/Core>

namespace hbsumma {

// Roots of c_0 + c_1 z + ... + c_d z^d via the companion matrix (exact zero
// leading coefficients are trimmed first). Returns d roots; an empty vector
// for constants. Roots are sorted by (|z|, arg z) for deterministic output.
Eigen::VectorXcd polynomial_roots(const Eigen::VectorXcd& coeffs);

// One complex Newton step refinement pass (up to `iters` steps) of root z0 on
// the same polynomial; falls back to z0 if the step diverges.
std::complex<double> polish_root(const Eigen::VectorXcd& coeffs, std::complex<double> z0,
                                 int iters = 3);

}  // namespace hbsumma
