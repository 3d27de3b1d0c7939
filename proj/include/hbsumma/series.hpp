#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>

namespace hbsumma {

using Complex = std::complex<double>;
using Eigen::Index;

// Asserts |a_n| <= C * R^n for every coefficient beyond the stored range.
struct TailBound {
    double C = 0.0;
    double R = 1.0;
};

// A finite complex coefficient vector: either a polynomial (exact) or the
// truncation of an infinite Taylor series, optionally carrying a geometric
// tail bound. Values are immutable after construction; all operations on
// them are pure functions.
class TaylorSeries {
public:
    static constexpr Index kMaxCoeffs = 4096;

    // Exact polynomial with coefficients c (c[n] is the z^n coefficient).
    static TaylorSeries polynomial(Eigen::VectorXcd c);
    // Truncation of an infinite series, with an optional certified tail.
    static TaylorSeries truncation(Eigen::VectorXcd c, std::optional<TailBound> tail = {});
    static TaylorSeries zero() { return polynomial(Eigen::VectorXcd::Zero(1)); }

    const Eigen::VectorXcd& coeffs() const { return coeffs_; }
    Index degree() const { return coeffs_.size() - 1; }
    // Stored coefficient, zero beyond the stored range.
    Complex coeff(Index n) const {
        return (n >= 0 && n < coeffs_.size()) ? coeffs_[n] : Complex(0.0);
    }
    bool is_exact() const { return exact_; }
    const std::optional<TailBound>& tail_bound() const { return tail_; }

private:
    TaylorSeries(Eigen::VectorXcd c, bool exact, std::optional<TailBound> tail);

    Eigen::VectorXcd coeffs_;
    bool exact_;
    std::optional<TailBound> tail_;
};

struct EvalResult {
    Complex value;
    double tail_error;  // certified bound on the dropped tail; 0 for polynomials,
                        // +inf when the series is inexact and bound-free
};

// Coefficient n of the result is sum_{k=0..n} p_k q_{n-k}. Exact inputs give
// the full product; if either input is a truncation, the result is truncated
// where its coefficients stop being determined by the stored data.
TaylorSeries cauchy_product(const TaylorSeries& p, const TaylorSeries& q);

// First order+1 coefficients of the formal quotient numer/denom via the
// standard recurrence. Requires denom(0) != 0.
TaylorSeries divide(const TaylorSeries& numer, const TaylorSeries& denom, Index order);

// Polynomial with coefficients a_0..a_n. For exact f and n >= deg f, returns
// f itself; requesting coefficients beyond the stored range of a truncation
// is an error.
TaylorSeries partial_sum(const TaylorSeries& f, Index n);

// Coefficient n of the result is a_n r^n; a tail bound (C, R) becomes (C, R*r).
TaylorSeries dilate(const TaylorSeries& f, double r);

// Horner evaluation of the stored coefficients, with a certified bound on the
// dropped tail when one is available.
EvalResult evaluate(const TaylorSeries& f, Complex z);

// sqrt(sum |a_n|^2) over the stored coefficients.
double h2_norm(const TaylorSeries& f);
// Upper bound including the tail; +inf when the tail cannot be certified.
double h2_norm_upper(const TaylorSeries& f);

}  // namespace hbsumma
