#pragma once

#include <Eigen/Core>
#include <array>

#include "hbsumma/series.hpp"

namespace hbsumma {

// Symbol b, outer mate a with a(0) > 0 and |a|^2 + |b|^2 = 1 on the circle,
// and the truncated quotient phi = b/a whose coefficients drive the H(b)
// norm formula.
struct PythagoreanPair {
    TaylorSeries b = TaylorSeries::zero();
    TaylorSeries a = TaylorSeries::zero();
    TaylorSeries phi = TaylorSeries::zero();
    double grid_residual = 0.0;  // max over validation grid of ||a|^2 + |b|^2 - 1|
    double phi_residual = 0.0;   // max |(phi * a - b)_n| through the phi order
};

enum class ExtremeVerdict { non_extreme, extreme, inconclusive };

struct NonExtremenessReport {
    double min_modulus_gap = 0.0;        // min over the finest grid of 1 - |b|^2
    double log_integral_estimate = 0.0;  // finest-level estimate of (1/2pi) int log(1-|b|^2)
    std::array<double, 3> level_estimates{};  // grid_size, 2x, 4x
    ExtremeVerdict verdict = ExtremeVerdict::inconclusive;
};

const char* to_string(ExtremeVerdict v);

// Samples 1 - |b(e^{i theta})|^2 on the uniform grid theta_j = offset + 2 pi j / M.
// Errors if |b| exceeds the unit ball beyond 1e-12 anywhere on the grid.
Eigen::VectorXd sample_one_minus_modsq(const TaylorSeries& b, Index grid_size,
                                       double offset = 0.0);

// Quadrature estimates of (1/2pi) int log(1 - |b|^2) d theta at three grid
// refinements (midpoint sampling, so isolated boundary zeros are never hit
// exactly), with the stability-based verdict.
NonExtremenessReport check_nonextreme(const TaylorSeries& b, Index grid_size);

struct FejerRieszOptions {
    double circle_tol = 1e-6;   // |rho| within this of 1 classifies as a circle root
    double pairing_tol = 1e-6;  // relative reciprocal-conjugate matching tolerance
    Index grid_size = 4096;     // validation grid for the residual
    Index phi_order = 512;
};

// Spectral factorization of 1 - |b|^2 for polynomial b: roots of the
// associated Laurent polynomial are split into reciprocal-conjugate pairs,
// circle roots (even multiplicity) are collapsed to their projected cluster
// means, and the outer factor is rebuilt with a(0) > 0.
PythagoreanPair fejer_riesz(const TaylorSeries& b, double tol,
                            const FejerRieszOptions& opts = {});

struct OuterOptions {
    double grid_offset = 0.0;
    double clip_floor = 1e-300;
    Index clip_budget = -1;      // default: max(1, M/512)
    double stability_tol = 1e-6; // allowed coefficient drift under grid halving
    bool check_stability = true;
};

// Taylor coefficients of the outer function a = exp(u/2), u the analytic
// completion of log w, from samples of w = 1 - |b|^2 >= 0 on a 2^m-point
// grid. Boundary zeros of w are deflated analytically before the log-FFT
// step; remaining tiny samples are clipped at the floor, subject to the
// budget and a grid-halving stability check.
TaylorSeries outer_from_log_modulus(const Eigen::VectorXd& w, Index order,
                                    const OuterOptions& opts = {});

struct PhiCoefficients {
    TaylorSeries coeffs = TaylorSeries::zero();
    double multiply_back_residual = 0.0;  // max |(phi * a - b)_n|, n <= order
};

// First order+1 coefficients c_j of b/a by series division.
PhiCoefficients phi_coefficients(const PythagoreanPair& pair, Index order);

// Pair construction through the modulus route: sample 1 - |b|^2, build the
// outer mate by outer_from_log_modulus, validate on the grid.
PythagoreanPair pair_from_modulus(const TaylorSeries& b, Index grid_size, Index order,
                                  double tol, Index phi_order = 512);

// The repository's canonical worked symbol b(z) = (1+z)/2 with exact mate
// (1-z)/2 and phi = (1, 2, 2, ...); the phi truncation carries its exact
// tail bound |c_j| <= 2.
PythagoreanPair halfshift_pair(Index phi_order = 512);

}  // namespace hbsumma
