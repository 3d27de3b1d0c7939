#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hbsumma/hb.hpp"
#include "hbsumma/series.hpp"

namespace hbsumma {

// Descriptor of a sequence-to-function summability method: power-series
// weights p_n with radius R_p, rows of an infinite matrix, or nonnegative
// kernels k_n(x) on [0, R). Descriptors are immutable; all evaluations are
// pure functions of (descriptor, inputs).
struct SummabilityMethod {
    enum class Kind { power_series, matrix, kernel };

    Kind kind = Kind::power_series;
    std::string name;
    std::string note;    // provenance remarks surfaced in reports
    double radius = 1.0; // R: the domain end of r

    // power_series
    std::function<double(Index)> weight;              // p_n
    double weight_radius = 1.0;                       // R_p
    std::function<double(double)> weight_sum;         // closed-form p(r), optional
    // certified upper bound on sum_{n > H} p_n y^n, optional; avoids the
    // cancellation floor of evaluating tails as p(y) - S_H(y)
    std::function<double(Index, double)> weight_tail;

    // matrix: finite row m of k_n(m)
    std::function<Eigen::VectorXd(Index)> row;

    // kernel: log k_n(x) (-inf below kernel_start); normalized divides by
    // sum_n k_n(x) so condition 3 of the regularity theorem can hold
    std::function<double(Index, double)> log_kernel;
    Index kernel_start = 0;
    bool kernel_normalized = true;
};

SummabilityMethod abel_method();
SummabilityMethod gen_abel_method(double alpha);  // alpha > -1; alpha = 0 is Abel
SummabilityMethod logarithmic_method();
SummabilityMethod cesaro_method();
SummabilityMethod borel_method(double alpha, double beta, bool raw = false);  // alpha > 0
SummabilityMethod identity_method();  // matrix row m selects s_m
SummabilityMethod power_series_method(std::string name, std::function<double(Index)> weights,
                                      double weight_radius);
// Matrix with every row (1, 0, 0, ...): fails the pointwise-null condition.
SummabilityMethod constant_row_counterexample();

// Parses "abel", "gen-abel:A", "log", "cesaro", "borel:A,B", "borel-raw:A,B",
// "identity", "const-row".
SummabilityMethod builtin(const std::string& spec);

// binomial(n + alpha, alpha) through log-gamma differences.
double binomial_weight(Index n, double alpha);

struct ScalarSequence {
    std::function<Complex(Index)> at;
    double growth_C = 1.0;  // |x_n| <= C * R^n
    double growth_R = 1.0;
};

struct VectorSequence {
    std::function<Eigen::VectorXcd(Index)> at;
    double growth_C = 1.0;  // norm(x_n) <= C * R^n
    double growth_R = 1.0;
    std::function<double(const Eigen::VectorXcd&)> norm;
};

template <class T>
struct MeanResult {
    T value{};
    std::int64_t horizon = 0;
    double tail_err = 0.0;
};

// K_r[x] = sum_n k_n(r) x_n truncated at a certified horizon. For matrix
// methods r selects the row floor(r).
MeanResult<Complex> means(const SummabilityMethod& method, const ScalarSequence& seq, double r,
                          double tol = 1e-12);
MeanResult<Eigen::VectorXcd> means(const SummabilityMethod& method, const VectorSequence& seq,
                                   double r, double tol = 1e-12);

struct PartialSumMean {
    TaylorSeries series = TaylorSeries::zero();
    std::int64_t horizon = 0;
    double tail_err = 0.0;
    std::optional<HbVector> norm;  // present when an HbContext was supplied
};

// P_r[f] = (1/p(r)) sum_n p_n s_n[f] r^n, evaluated coefficientwise: the
// z^m coefficient is a_m * (sum_{n>=m} p_n r^n) / p(r), an exact
// rearrangement of the absolutely convergent double sum.
PartialSumMean mean_of_partial_sums(const SummabilityMethod& method, const TaylorSeries& f,
                                    const HbContext* ctx, double r, double tol = 1e-12);

struct LogMeanIntegral {
    TaylorSeries series = TaylorSeries::zero();
    double quad_error = 0.0;
    std::int64_t intervals = 0;
};

// (1/log(1/(1-r))) int_0^r f_t / (1-t) dt, coefficientwise by vector-valued
// adaptive Simpson. Dual path to the series route of the logarithmic mean.
LogMeanIntegral log_mean_integral(const TaylorSeries& f, double r, double tol = 1e-10);

struct RegularityReport {
    bool bounded_l1 = false;
    double l1_sup = 0.0;
    bool pointwise_null = false;
    std::vector<double> terminal_kernel;  // |k_n| at the last grid point, n <= horizon
    bool mass_to_one = false;
    double terminal_mass = 0.0;
    bool p_check_applicable = false;  // power-series kinds also test p(r) -> infinity
    bool p_to_infinity = false;
    bool regular = false;
    std::string detail;
};

// Numerically evaluates the three regularity conditions on the grid/horizon;
// for power-series methods additionally reports whether p(r) -> infinity.
RegularityReport regularity_report(const SummabilityMethod& method, double r0,
                                   const Eigen::VectorXd& r_grid, Index n_horizon = 16);

// Arithmetic mean of the first n+1 entries.
template <class Seq>
auto cesaro_mean(const Seq& at, Index n) -> std::decay_t<decltype(at(Index(0)))> {
    auto acc = at(Index(0));
    for (Index k = 1; k <= n; ++k) acc += at(k);
    return acc / double(n + 1);
}

}  // namespace hbsumma
