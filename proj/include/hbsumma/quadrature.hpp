#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "hbsumma/errors.hpp"

namespace hbsumma {

inline double quad_abs(double v) { return std::abs(v); }
inline double quad_abs(const std::complex<double>& v) { return std::abs(v); }
template <typename Derived>
double quad_abs(const Eigen::MatrixBase<Derived>& v) {
    return v.cwiseAbs().maxCoeff();
}

template <class V>
struct QuadResult {
    V value;
    double error_estimate;  // accumulated Richardson error over accepted intervals
    std::int64_t intervals;
};

// Adaptive Simpson with Richardson extrapolation. The absolute tolerance is
// split across subintervals, so error_estimate bounds the total quadrature
// error for smooth integrands. Throws certification_error if the interval
// cap is reached before the tolerance is met.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, double tol,
                      std::int64_t max_intervals = 1'000'000)
    -> QuadResult<std::decay_t<decltype(f(a))>> {
    using V = std::decay_t<decltype(f(a))>;
    if (!(tol > 0.0)) throw std::invalid_argument("adaptive_simpson: tol must be > 0");

    struct Segment {
        double a, b, tol;
        V fa, fm, fb;
        V whole;
    };

    auto simpson = [](double l, double r, const V& fl, const V& fm, const V& fr) -> V {
        return (r - l) / 6.0 * (fl + 4.0 * fm + fr);
    };

    const double m0 = 0.5 * (a + b);
    V fa = f(a), fm = f(m0), fb = f(b);
    std::vector<Segment> stack;
    stack.push_back({a, b, tol, fa, fm, fb, simpson(a, b, fa, fm, fb)});

    V total = V(0.0 * fa);  // zero of the value type, shaped like f(a)
    double err = 0.0;
    std::int64_t used = 1;

    while (!stack.empty()) {
        Segment s = std::move(stack.back());
        stack.pop_back();
        const double m = 0.5 * (s.a + s.b);
        const double lm = 0.5 * (s.a + m), rm = 0.5 * (m + s.b);
        V flm = f(lm), frm = f(rm);
        V left = simpson(s.a, m, s.fa, flm, s.fm);
        V right = simpson(m, s.b, s.fm, frm, s.fb);
        V delta = left + right - s.whole;
        const double dn = quad_abs(delta) / 15.0;
        if (dn <= s.tol || (s.b - s.a) < 1e-14 * (b - a)) {
            total += left + right + delta / 15.0;
            err += dn;
            continue;
        }
        used += 2;
        if (used > max_intervals)
            throw certification_error("adaptive_simpson: interval cap reached before tolerance");
        stack.push_back({s.a, m, 0.5 * s.tol, s.fa, flm, s.fm, std::move(left)});
        stack.push_back({m, s.b, 0.5 * s.tol, s.fm, frm, s.fb, std::move(right)});
    }
    return {std::move(total), err, used};
}

}  // namespace hbsumma
