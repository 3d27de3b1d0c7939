#include "hbsumma/hb.hpp"

#include <cmath>
#include <stdexcept>

#include "hbsumma/errors.hpp"

namespace hbsumma {

namespace {

// Uniform geometric envelope |c_j| <= C * R^j valid for all j, combining the
// stored coefficients with the declared tail, or nullopt when none exists.
std::optional<TailBound> phi_envelope(const HbContext& ctx) {
    if (ctx.phi.is_exact()) {
        // Polynomial phi: zero tail; envelope only needs the stored range.
        double c = 0.0;
        for (Index j = 0; j <= ctx.phi.degree(); ++j)
            c = std::max(c, std::abs(ctx.phi.coeffs()[j]));
        return TailBound{c, 1.0};
    }
    if (!ctx.phi.tail_bound()) return std::nullopt;
    const TailBound tb = *ctx.phi.tail_bound();
    const double r = std::max(tb.R, 1.0);  // envelope radius covering stored range too
    double c = tb.C;
    double rj = 1.0;
    for (Index j = 0; j <= ctx.phi.degree(); ++j) {
        c = std::max(c, std::abs(ctx.phi.coeffs()[j]) / rj);
        rj *= r;
    }
    return TailBound{c, r};
}

}  // namespace

TaylorSeries f_plus(const TaylorSeries& f, const HbContext& ctx) {
    if (!f.is_exact()) throw std::invalid_argument("f_plus: f must be a polynomial");
    const Index n_deg = f.degree();
    // A polynomial phi has exact zeros beyond its stored range; a truncated
    // phi must reach deg f for the finite sums to be complete.
    if (!ctx.phi.is_exact() && ctx.order() < n_deg)
        throw std::invalid_argument("phi order too small");

    Eigen::VectorXcd out(n_deg + 1);
    for (Index n = 0; n <= n_deg; ++n) {
        Complex s(0.0);
        for (Index j = 0; j + n <= n_deg; ++j)
            s += f.coeffs()[j + n] * std::conj(ctx.phi.coeff(j));
        out[n] = s;
    }
    return TaylorSeries::polynomial(std::move(out));
}

HbVector hb_norm(const TaylorSeries& f, const HbContext& ctx) {
    HbVector out;
    if (f.is_exact()) {
        out.f = f;
        out.f_plus = f_plus(f, ctx);
        out.h2_part = h2_norm(f);
        out.plus_part = h2_norm(out.f_plus);
        out.norm_b = std::hypot(out.h2_part, out.plus_part);
        out.tail_err = 0.0;
        return out;
    }
    if (!f.tail_bound())
        throw std::invalid_argument("hb_norm: truncation requires a certified tail bound");

    // Stored part as a polynomial, plus an interval covering the tail's
    // possible contribution to the norm.
    const TailBound tf = *f.tail_bound();
    const TaylorSeries stored = TaylorSeries::polynomial(f.coeffs());
    out = hb_norm(stored, ctx);
    out.f = f;
    if (tf.C == 0.0) return out;

    const std::optional<TailBound> env = phi_envelope(ctx);
    if (!env) throw certification_error("hb_norm: phi tail bound unavailable");
    const double rf = tf.R, q = tf.R * env->R;
    if (rf >= 1.0 || q >= 1.0)
        throw certification_error("hb_norm: tail not certifiable (growth radius >= 1)");

    const Index m = f.degree();
    const double cc = tf.C * env->C / (1.0 - q);
    // H2 part of the tail.
    double tail2 = tf.C * tf.C * std::pow(rf, 2.0 * double(m + 1)) / (1.0 - rf * rf);
    // Companion part: n <= m rows pick up only j >= m+1-n.
    for (Index n = 0; n <= m; ++n) {
        const double row = cc * std::pow(rf, double(n)) * std::pow(q, double(m + 1 - n));
        tail2 += row * row;
    }
    // Rows beyond the stored range.
    tail2 += cc * cc * std::pow(rf, 2.0 * double(m + 1)) / (1.0 - rf * rf);
    out.tail_err = std::sqrt(tail2);
    return out;
}

Certified<Complex> f_plus_at_zero_dilated(const TaylorSeries& f, const HbContext& ctx, double r) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("f_plus_at_zero_dilated: r must lie in [0, 1)");
    const TaylorSeries dil = dilate(f, r);
    const Index j_max = std::min(dil.degree(), ctx.order());

    Certified<Complex> out;
    Complex s(0.0);
    for (Index j = 0; j <= j_max; ++j)
        s += dil.coeffs()[j] * std::conj(ctx.phi.coeffs()[j]);
    out.value = s;

    double tail = 0.0;
    const std::optional<TailBound> env = phi_envelope(ctx);
    if (f.degree() > ctx.order()) {
        // Stored coefficients of f whose phi partner is beyond the truncation.
        if (!ctx.phi.is_exact()) {
            if (!env) throw certification_error("f_plus_at_zero_dilated: tail not certifiable");
            double rj = std::pow(r * env->R, double(ctx.order() + 1));
            for (Index j = ctx.order() + 1; j <= f.degree(); ++j) {
                tail += std::abs(f.coeffs()[j]) * env->C * rj;
                rj *= r * env->R;
            }
        }
        // For exact (polynomial) phi the missing coefficients are zero.
    }
    if (!f.is_exact() && f.tail_bound() && f.tail_bound()->C > 0.0) {
        if (!env) throw certification_error("f_plus_at_zero_dilated: tail not certifiable");
        const TailBound tf = *f.tail_bound();
        const double y = r * tf.R * env->R;
        if (y >= 1.0) throw certification_error("f_plus_at_zero_dilated: tail not certifiable");
        tail += tf.C * env->C * std::pow(y, double(f.degree() + 1)) / (1.0 - y);
    } else if (!f.is_exact() && !f.tail_bound()) {
        throw certification_error("f_plus_at_zero_dilated: tail not certifiable");
    }
    out.tail_err = tail;
    if (out.tail_err > ctx.tol)
        throw certification_error("f_plus_at_zero_dilated: tail exceeds tolerance");
    return out;
}

Certified<double> dilate_bound_constant(const HbContext& ctx, double r) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::invalid_argument("dilate_bound_constant: r must lie in [0, 1)");
    double sum = 0.0, rj = 1.0;
    for (Index j = 0; j <= ctx.order(); ++j) {
        sum += rj * std::norm(ctx.phi.coeffs()[j]);
        rj *= r;
    }
    double tail = 0.0;
    if (!ctx.phi.is_exact()) {
        if (!ctx.phi.tail_bound())
            throw certification_error("dilate_bound_constant: phi tail not certifiable");
        const TailBound tb = *ctx.phi.tail_bound();
        if (tb.C > 0.0) {
            const double y = r * tb.R * tb.R;
            if (y >= 1.0)
                throw certification_error("dilate_bound_constant: phi tail not certifiable");
            tail = tb.C * tb.C * std::pow(y, double(ctx.order() + 1)) / (1.0 - y);
        }
    }
    Certified<double> out;
    out.value = 1.0 + sum / (1.0 - r);
    out.tail_err = tail / (1.0 - r);
    return out;
}

GrowthTable sn_growth_table(const TaylorSeries& f, const HbContext& ctx, Index n_max) {
    if (n_max < 0) throw std::invalid_argument("sn_growth_table: n_max must be >= 0");
    if (!f.is_exact() && f.degree() < n_max)
        throw std::invalid_argument("sn_growth_table: insufficient data (f stored below n_max)");
    if (ctx.order() < std::min(n_max, f.degree()))
        throw std::invalid_argument("sn_growth_table: insufficient data (phi order below n_max)");

    GrowthTable table;
    table.norms.resize(std::size_t(n_max) + 1);
    for (Index n = 0; n <= n_max; ++n)
        table.norms[std::size_t(n)] = hb_norm(partial_sum(f, n), ctx).norm_b;

    // Least-squares slope of log ||s_N||_b against N over the positive entries.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    Index count = 0;
    for (Index n = 0; n <= n_max; ++n) {
        const double v = table.norms[std::size_t(n)];
        if (v <= 0.0) continue;
        const double y = std::log(v);
        sx += double(n);
        sy += y;
        sxx += double(n) * double(n);
        sxy += double(n) * y;
        ++count;
    }
    if (count >= 2) {
        const double denom = double(count) * sxx - sx * sx;
        if (denom > 0.0) table.fitted_rate = (double(count) * sxy - sx * sy) / denom;
    }
    table.fitted_base = std::exp(table.fitted_rate);
    return table;
}

}  // namespace hbsumma
