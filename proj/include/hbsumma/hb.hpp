#pragma once

#include <vector>

#include "hbsumma/pair.hpp"
#include "hbsumma/series.hpp"

namespace hbsumma {

// Everything needed to evaluate the H(b) norm through the coefficient
// formula: the phi = b/a truncation (optionally carrying its tail bound) and
// the tolerance for reported tails. Immutable and shareable across threads.
struct HbContext {
    TaylorSeries phi = TaylorSeries::zero();
    double tol = 1e-10;

    Index order() const { return phi.degree(); }
    static HbContext from_pair(const PythagoreanPair& pair, double tol = 1e-10) {
        return HbContext{pair.phi, tol};
    }
};

struct HbVector {
    TaylorSeries f = TaylorSeries::zero();
    TaylorSeries f_plus = TaylorSeries::zero();
    double h2_part = 0.0;
    double plus_part = 0.0;
    double norm_b = 0.0;
    double tail_err = 0.0;  // half-width of the certified norm interval
};

template <class T>
struct Certified {
    T value{};
    double tail_err = 0.0;
};

// Companion function of a polynomial: (f+)_n = sum_{j=0..N-n} a_{j+n} conj(c_j).
// Exact finite sums; requires the phi truncation to reach deg f.
TaylorSeries f_plus(const TaylorSeries& f, const HbContext& ctx);

// norm_b = sqrt(sum |a_n|^2 + sum_n |(f+)_n|^2). Exact for polynomials;
// truncations must carry a certifiable tail and get an explicit interval.
HbVector hb_norm(const TaylorSeries& f, const HbContext& ctx);

// (f_r)+(0) = sum_j a_j r^j conj(c_j), with a certified truncation tail.
Certified<Complex> f_plus_at_zero_dilated(const TaylorSeries& f, const HbContext& ctx, double r);

// C(phi, r) = 1 + (sum_j r^j |c_j|^2) / (1 - r); nondecreasing in r.
Certified<double> dilate_bound_constant(const HbContext& ctx, double r);

struct GrowthTable {
    std::vector<double> norms;  // norms[N] = ||s_N[f]||_b
    double fitted_rate = 0.0;   // least-squares slope of log ||s_N||_b against N
    double fitted_base = 1.0;   // exp(fitted_rate): the R in O(R^N)
};

// Exact norms of the partial sums s_0..s_Nmax plus a fitted exponential rate.
GrowthTable sn_growth_table(const TaylorSeries& f, const HbContext& ctx, Index n_max);

}  // namespace hbsumma
