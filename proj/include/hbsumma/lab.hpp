#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hbsumma/hb.hpp"
#include "hbsumma/summ.hpp"

namespace hbsumma {

// Moment generators mu_n = int_0^1 t^n dmu and int_0^1 t^n |dmu| of a finite
// signed measure on [0, 1].
struct MeasureMoments {
    std::function<double(Index)> moment;
    std::function<double(Index)> abs_moment;
    std::string description;
};

MeasureMoments lebesgue_moments();                       // mu_n = 1/(n+1)
MeasureMoments point_mass_moments(double t0, double weight = 1.0);
// Density-defined measure; moments computed by adaptive quadrature and cached.
MeasureMoments density_moments(std::function<double(double)> density, double tol = 1e-12);

struct BorweinReport {
    bool moments_ok = false;       // p_n = q_n mu_n (relative tolerance 1e-10)
    double max_rel_violation = 0.0;
    bool delta_ok = false;         // mu_n >= delta * |mu|_n
    double min_margin = 0.0;       // min over n of mu_n - delta * |mu|_n
    bool passed = false;
    Index from_n = 0;
    Index horizon = 0;
    double delta = 1.0;
    std::string verdict;
};

// Borwein's moment conditions for "q scalar-included in p": p_n = q_n mu_n
// and mu_n >= delta |mu|_n for N <= n <= horizon.
BorweinReport borwein_check(const std::function<double(Index)>& p_weights,
                            const std::function<double(Index)>& q_weights,
                            const MeasureMoments& mm, double delta, Index from_n, Index horizon);

// Conditions (A)/(B): the same check with the logarithmic weights 1/(n+1)
// fixed on the left side, certifying "p scalar-included in logarithmic".
BorweinReport conditions_AB_check(const std::function<double(Index)>& p_weights,
                                  const MeasureMoments& mm, double delta, Index from_n,
                                  Index horizon);

struct InclusionReport {
    bool within_tol = false;
    double difference = 0.0;  // between the extrapolated K and H limits
    double tol = 0.0;
    bool k_cauchy = false;    // raw last-quartile oscillation below tol
    bool h_cauchy = false;
    double k_oscillation = 0.0;
    double h_oscillation = 0.0;
    // Scalar probes fill the complex fields; vector probes fill the vectors.
    Complex k_limit{};
    Complex h_limit{};
    Complex k_raw_last{};
    Complex h_raw_last{};
    Eigen::VectorXcd k_limit_vec;
    Eigen::VectorXcd h_limit_vec;
};

// Finite surrogate of the scalar-inclusion transfer: evaluates both methods'
// means along the grid, requires the K-means to be Cauchy on the last
// quartile, and compares limit estimates extrapolated in the boundary gauge
// u = log(R/(R-r)) (the grid value alone underestimates slowly converging
// means such as the logarithmic one).
InclusionReport empirical_inclusion(const SummabilityMethod& k_method,
                                    const SummabilityMethod& h_method, const ScalarSequence& seq,
                                    const Eigen::VectorXd& r_grid, double tol);
InclusionReport empirical_inclusion(const SummabilityMethod& k_method,
                                    const SummabilityMethod& h_method, const VectorSequence& seq,
                                    const Eigen::VectorXd& r_grid, double tol);

struct ScanRow {
    double r = 0.0;
    double norm_b = 0.0;        // ||L_r[f]||_b
    Complex fplus0{};           // (L_r[f])+(0), series path
    Complex fplus0_quad{};      // same through the dilate integral
    double bound = 0.0;         // sqrt(C(phi, r)) * ||f||_{H^2}
    std::int64_t horizon = 0;
    double tail_err = 0.0;
    double quad_residual = 0.0;
    bool ok = false;
    std::string message;
};

struct ScanTable {
    std::vector<ScanRow> rows;
    double f_h2 = 0.0;
};

// Logarithmic-mean blow-up scan over an increasing r-grid in (0, 1). Rows
// whose tails cannot be certified are flagged and the scan continues.
ScanTable scan_divergence(const TaylorSeries& f, const HbContext& ctx,
                          const Eigen::VectorXd& r_grid, double tol = 1e-9);

// |direct (L_r[f])+(0) - quadrature path| for one r.
double lr_plus_identity_check(const TaylorSeries& f, const HbContext& ctx, double r, double tol);

struct ContinuityRow {
    double delta = 0.0;
    double modulus = 0.0;  // ||f_{t0+delta} - f_{t0}||_b
};

// Modulus-of-continuity table for the dilate map t -> f_t in H(b).
std::vector<ContinuityRow> dilate_continuity_probe(const TaylorSeries& f, const HbContext& ctx,
                                                   double t0,
                                                   const Eigen::VectorXd& delta_grid);

// log((1-r0)/(1-r)) / log(1/(1-r)): the lower-bound prefactor in the
// split-integral divergence estimate; nondecreasing in r for fixed r0.
double split_lower_prefactor(double r0, double r);

}  // namespace hbsumma
