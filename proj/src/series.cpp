#include "hbsumma/series.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hbsumma/errors.hpp"

namespace hbsumma {

namespace {

Eigen::VectorXcd checked(Eigen::VectorXcd c) {
    if (c.size() == 0) c = Eigen::VectorXcd::Zero(1);
    if (c.size() > TaylorSeries::kMaxCoeffs)
        throw std::invalid_argument("degree cap exceeded (4096 coefficients)");
    return c;
}

}  // namespace

TaylorSeries::TaylorSeries(Eigen::VectorXcd c, bool exact, std::optional<TailBound> tail)
    : coeffs_(std::move(c)), exact_(exact), tail_(std::move(tail)) {}

TaylorSeries TaylorSeries::polynomial(Eigen::VectorXcd c) {
    return TaylorSeries(checked(std::move(c)), true, {});
}

TaylorSeries TaylorSeries::truncation(Eigen::VectorXcd c, std::optional<TailBound> tail) {
    if (tail && (tail->C < 0.0 || tail->R <= 0.0))
        throw std::invalid_argument("tail bound requires C >= 0 and R > 0");
    return TaylorSeries(checked(std::move(c)), false, std::move(tail));
}

TaylorSeries cauchy_product(const TaylorSeries& p, const TaylorSeries& q) {
    const Index dp = p.degree(), dq = q.degree();
    const bool exact = p.is_exact() && q.is_exact();
    // Coefficient n of the product is determined by the stored data only up
    // to the stored degree of each inexact factor.
    Index dout = dp + dq;
    if (!p.is_exact()) dout = std::min(dout, dp);
    if (!q.is_exact()) dout = std::min(dout, dq);
    if (dout + 1 > TaylorSeries::kMaxCoeffs)
        throw std::invalid_argument("degree cap exceeded (4096 coefficients)");

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dout + 1);
    for (Index n = 0; n <= dout; ++n) {
        Complex s(0.0);
        const Index klo = std::max<Index>(0, n - dq);
        const Index khi = std::min(n, dp);
        for (Index k = klo; k <= khi; ++k) s += p.coeffs()[k] * q.coeffs()[n - k];
        out[n] = s;
    }
    return exact ? TaylorSeries::polynomial(std::move(out))
                 : TaylorSeries::truncation(std::move(out));
}

TaylorSeries divide(const TaylorSeries& numer, const TaylorSeries& denom, Index order) {
    if (order < 0) throw std::invalid_argument("divide: order must be >= 0");
    if (denom.coeffs()[0] == Complex(0.0))
        throw std::invalid_argument("non-invertible series");
    if (!numer.is_exact() && numer.degree() < order)
        throw std::invalid_argument("divide: numerator truncation shorter than requested order");
    if (!denom.is_exact() && denom.degree() < order)
        throw std::invalid_argument("divide: denominator truncation shorter than requested order");
    if (order + 1 > TaylorSeries::kMaxCoeffs)
        throw std::invalid_argument("degree cap exceeded (4096 coefficients)");

    const Complex d0 = denom.coeffs()[0];
    Eigen::VectorXcd out(order + 1);
    for (Index n = 0; n <= order; ++n) {
        Complex s = numer.coeff(n);
        const Index khi = std::min(n, denom.degree());
        for (Index k = 1; k <= khi; ++k) s -= denom.coeffs()[k] * out[n - k];
        out[n] = s / d0;
    }
    return TaylorSeries::truncation(std::move(out));
}

TaylorSeries partial_sum(const TaylorSeries& f, Index n) {
    if (n < 0) throw std::invalid_argument("partial_sum: n must be >= 0");
    if (n >= f.degree() && f.is_exact()) return f;
    if (n > f.degree())
        throw std::invalid_argument(
            "partial_sum: requested index beyond stored truncation of a non-exact series");
    return TaylorSeries::polynomial(f.coeffs().head(n + 1));
}

TaylorSeries dilate(const TaylorSeries& f, double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("dilate: r must lie in [0, 1]");
    Eigen::VectorXcd out(f.coeffs().size());
    double rn = 1.0;
    for (Index n = 0; n < out.size(); ++n) {
        out[n] = f.coeffs()[n] * rn;
        rn *= r;
    }
    if (f.is_exact()) return TaylorSeries::polynomial(std::move(out));
    std::optional<TailBound> tail = f.tail_bound();
    if (tail) tail->R *= r;
    return TaylorSeries::truncation(std::move(out), tail);
}

EvalResult evaluate(const TaylorSeries& f, Complex z) {
    double tail_error = 0.0;
    if (!f.is_exact()) {
        if (f.tail_bound()) {
            const auto& tb = *f.tail_bound();
            const double y = tb.R * std::abs(z);
            if (y >= 1.0)
                throw certification_error("evaluate: point outside guaranteed radius");
            tail_error = tb.C * std::pow(y, double(f.degree() + 1)) / (1.0 - y);
        } else {
            if (std::abs(z) >= 1.0)
                throw certification_error("evaluate: point outside guaranteed radius");
            tail_error = std::numeric_limits<double>::infinity();
        }
    }
    Complex acc(0.0);
    for (Index n = f.degree(); n >= 0; --n) acc = acc * z + f.coeffs()[n];
    return {acc, tail_error};
}

double h2_norm(const TaylorSeries& f) { return f.coeffs().norm(); }

double h2_norm_upper(const TaylorSeries& f) {
    const double stored2 = f.coeffs().squaredNorm();
    if (f.is_exact()) return std::sqrt(stored2);
    if (!f.tail_bound()) return std::numeric_limits<double>::infinity();
    const auto& tb = *f.tail_bound();
    if (tb.C == 0.0) return std::sqrt(stored2);
    if (tb.R >= 1.0) return std::numeric_limits<double>::infinity();
    const double q = tb.R * tb.R;
    const double tail2 = tb.C * tb.C * std::pow(q, double(f.degree() + 1)) / (1.0 - q);
    return std::sqrt(stored2 + tail2);
}

}  // namespace hbsumma
