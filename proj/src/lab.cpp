#include "hbsumma/lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "hbsumma/errors.hpp"
#include "hbsumma/parallel.hpp"
#include "hbsumma/quadrature.hpp"

namespace hbsumma {

namespace {

// Extrapolates grid values to the boundary by a least-squares fit of
// y = L + c/u over the last quartile, u the boundary gauge.
Complex gauge_extrapolate(const std::vector<double>& u, const std::vector<Complex>& y) {
    const std::size_t g = u.size();
    const std::size_t from = g >= 4 ? (3 * g) / 4 - 1 : 0;
    const std::size_t count = g - from;
    if (count < 3) return y.back();
    double s1 = 0.0, sx = 0.0, sxx = 0.0;
    Complex sy(0.0), sxy(0.0);
    for (std::size_t i = from; i < g; ++i) {
        const double xi = 1.0 / u[i];
        s1 += 1.0;
        sx += xi;
        sxx += xi * xi;
        sy += y[i];
        sxy += xi * y[i];
    }
    const double det = s1 * sxx - sx * sx;
    if (std::abs(det) < 1e-300) return y.back();
    return (sxx * sy - sx * sxy) / det;  // the intercept L
}

double boundary_gauge(double r, double radius) {
    if (std::isfinite(radius)) return std::log(radius / (radius - r));
    return std::log1p(r);
}

struct ProbeValues {
    std::vector<Complex> scalar;             // scalar probes
    std::vector<Eigen::VectorXcd> vec;       // vector probes
};

}  // namespace

MeasureMoments lebesgue_moments() {
    MeasureMoments mm;
    mm.moment = [](Index n) { return 1.0 / double(n + 1); };
    mm.abs_moment = mm.moment;
    mm.description = "Lebesgue measure on [0,1]";
    return mm;
}

MeasureMoments point_mass_moments(double t0, double weight) {
    if (!(t0 >= 0.0 && t0 <= 1.0))
        throw std::invalid_argument("point_mass_moments: t0 must lie in [0, 1]");
    MeasureMoments mm;
    mm.moment = [t0, weight](Index n) { return weight * std::pow(t0, double(n)); };
    mm.abs_moment = [t0, weight](Index n) {
        return std::abs(weight) * std::pow(t0, double(n));
    };
    mm.description = "point mass at t=" + std::to_string(t0);
    return mm;
}

MeasureMoments density_moments(std::function<double(double)> density, double tol) {
    auto cache = std::make_shared<std::map<Index, std::pair<double, double>>>();
    auto eval = [density, tol, cache](Index n) {
        const auto it = cache->find(n);
        if (it != cache->end()) return it->second;
        auto mom = adaptive_simpson(
            [&](double t) { return density(t) * std::pow(t, double(n)); }, 0.0, 1.0, tol);
        auto amom = adaptive_simpson(
            [&](double t) { return std::abs(density(t)) * std::pow(t, double(n)); }, 0.0, 1.0,
            tol);
        return (*cache)[n] = {mom.value, amom.value};
    };
    MeasureMoments mm;
    mm.moment = [eval](Index n) mutable { return eval(n).first; };
    mm.abs_moment = [eval](Index n) mutable { return eval(n).second; };
    mm.description = "density-defined measure (quadrature moments)";
    return mm;
}

BorweinReport borwein_check(const std::function<double(Index)>& p_weights,
                            const std::function<double(Index)>& q_weights,
                            const MeasureMoments& mm, double delta, Index from_n, Index horizon) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("borwein_check: delta must lie in (0, 1]");
    if (horizon < from_n) throw std::invalid_argument("borwein_check: horizon < N");
    BorweinReport rep;
    rep.from_n = from_n;
    rep.horizon = horizon;
    rep.delta = delta;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (Index n = from_n; n <= horizon; ++n) {
        const double pn = p_weights(n);
        const double mun = mm.moment(n);
        const double rhs = q_weights(n) * mun;
        const double scale = std::max({std::abs(pn), std::abs(rhs), 1e-300});
        rep.max_rel_violation = std::max(rep.max_rel_violation, std::abs(pn - rhs) / scale);
        rep.min_margin = std::min(rep.min_margin, mun - delta * mm.abs_moment(n));
    }
    rep.moments_ok = rep.max_rel_violation < 1e-10;
    rep.delta_ok = rep.min_margin >= -1e-14;
    rep.passed = rep.moments_ok && rep.delta_ok;
    rep.verdict = rep.passed
                      ? "q scalar-included in p (evidence up to horizon)"
                      : "moment conditions violated; no inclusion evidence";
    return rep;
}

BorweinReport conditions_AB_check(const std::function<double(Index)>& p_weights,
                                  const MeasureMoments& mm, double delta, Index from_n,
                                  Index horizon) {
    // (A): 1/(n+1) = p_n mu_n; (B): 1/(n+1) >= delta p_n |mu|_n.
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("conditions_AB_check: delta must lie in (0, 1]");
    if (horizon < from_n) throw std::invalid_argument("conditions_AB_check: horizon < N");
    BorweinReport rep;
    rep.from_n = from_n;
    rep.horizon = horizon;
    rep.delta = delta;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (Index n = from_n; n <= horizon; ++n) {
        const double lhs = 1.0 / double(n + 1);
        const double rhs = p_weights(n) * mm.moment(n);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        rep.max_rel_violation = std::max(rep.max_rel_violation, std::abs(lhs - rhs) / scale);
        rep.min_margin =
            std::min(rep.min_margin, lhs - delta * p_weights(n) * mm.abs_moment(n));
    }
    rep.moments_ok = rep.max_rel_violation < 1e-10;
    rep.delta_ok = rep.min_margin >= -1e-14;
    rep.passed = rep.moments_ok && rep.delta_ok;
    rep.verdict = rep.passed ? "p scalar-included in the logarithmic method (evidence up to horizon)"
                             : "conditions (A)/(B) violated; no inclusion evidence";
    return rep;
}

namespace {

template <class Seq, class Value>
InclusionReport inclusion_impl(const SummabilityMethod& k_method,
                               const SummabilityMethod& h_method, const Seq& seq,
                               const Eigen::VectorXd& r_grid, double tol,
                               const std::function<double(const Value&)>& norm) {
    if (k_method.radius != h_method.radius)
        throw std::invalid_argument("empirical_inclusion: methods must share a common R");
    if (r_grid.size() < 4)
        throw std::invalid_argument("empirical_inclusion: grid needs at least 4 points");
    for (Index i = 1; i < r_grid.size(); ++i)
        if (r_grid[i] <= r_grid[i - 1])
            throw std::invalid_argument("empirical_inclusion: grid must be increasing");

    const double mean_tol = std::max(1e-14, 1e-3 * tol);
    const std::size_t g = std::size_t(r_grid.size());
    std::vector<Value> kv(g), hv(g);
    std::vector<double> gauge(g);
    for (std::size_t i = 0; i < g; ++i) {
        kv[i] = means(k_method, seq, r_grid[Index(i)], mean_tol).value;
        hv[i] = means(h_method, seq, r_grid[Index(i)], mean_tol).value;
        gauge[i] = boundary_gauge(r_grid[Index(i)], k_method.radius);
    }

    auto oscillation = [&](const std::vector<Value>& v) {
        const std::size_t from = (3 * g) / 4 - 1;
        double osc = 0.0;
        for (std::size_t i = from; i < g; ++i) osc = std::max(osc, norm(Value(v[i] - v.back())));
        return osc;
    };

    InclusionReport rep;
    rep.tol = tol;
    rep.k_oscillation = oscillation(kv);
    rep.h_oscillation = oscillation(hv);
    rep.k_cauchy = rep.k_oscillation < tol;
    rep.h_cauchy = rep.h_oscillation < tol;
    if (!rep.k_cauchy) throw certification_error("K-summability not evidenced");

    // Componentwise gauge extrapolation of both limits.
    Value k_lim = kv.back(), h_lim = hv.back();
    if constexpr (std::is_same_v<Value, Complex>) {
        std::vector<Complex> yk(kv.begin(), kv.end()), yh(hv.begin(), hv.end());
        k_lim = gauge_extrapolate(gauge, yk);
        h_lim = gauge_extrapolate(gauge, yh);
        rep.k_limit = k_lim;
        rep.h_limit = h_lim;
        rep.k_raw_last = kv.back();
        rep.h_raw_last = hv.back();
    } else {
        for (Index c = 0; c < k_lim.size(); ++c) {
            std::vector<Complex> yk(g), yh(g);
            for (std::size_t i = 0; i < g; ++i) {
                yk[i] = kv[i][c];
                yh[i] = hv[i][c];
            }
            k_lim[c] = gauge_extrapolate(gauge, yk);
            h_lim[c] = gauge_extrapolate(gauge, yh);
        }
        rep.k_limit_vec = k_lim;
        rep.h_limit_vec = h_lim;
    }
    rep.difference = norm(Value(k_lim - h_lim));
    rep.within_tol = rep.difference < tol;
    return rep;
}

}  // namespace

InclusionReport empirical_inclusion(const SummabilityMethod& k_method,
                                    const SummabilityMethod& h_method, const ScalarSequence& seq,
                                    const Eigen::VectorXd& r_grid, double tol) {
    std::function<double(const Complex&)> norm = [](const Complex& v) { return std::abs(v); };
    return inclusion_impl<ScalarSequence, Complex>(k_method, h_method, seq, r_grid, tol, norm);
}

InclusionReport empirical_inclusion(const SummabilityMethod& k_method,
                                    const SummabilityMethod& h_method, const VectorSequence& seq,
                                    const Eigen::VectorXd& r_grid, double tol) {
    std::function<double(const Eigen::VectorXcd&)> norm = seq.norm;
    if (!norm) norm = [](const Eigen::VectorXcd& v) { return v.norm(); };
    return inclusion_impl<VectorSequence, Eigen::VectorXcd>(k_method, h_method, seq, r_grid, tol,
                                                            norm);
}

namespace {

// (f_t)+(0) truncated to the available phi coefficients; exact for
// polynomial f when the phi order covers deg f.
Complex fplus0_of_dilate(const TaylorSeries& f, const HbContext& ctx, double t) {
    const Index top = std::min(f.degree(), ctx.order());
    Complex s(0.0);
    double tn = 1.0;
    for (Index j = 0; j <= top; ++j) {
        s += f.coeffs()[j] * tn * std::conj(ctx.phi.coeffs()[j]);
        tn *= t;
    }
    return s;
}

ScanRow scan_row(const TaylorSeries& f, const HbContext& ctx, double r, double tol,
                 double f_h2) {
    ScanRow row;
    row.r = r;
    try {
        const SummabilityMethod log_m = logarithmic_method();
        const PartialSumMean mean = mean_of_partial_sums(log_m, f, &ctx, r, tol);
        row.norm_b = mean.norm->norm_b;
        row.horizon = mean.horizon;
        row.tail_err = mean.tail_err + mean.norm->tail_err;
        row.fplus0 = mean.norm->f_plus.coeff(0);

        const double u = -std::log1p(-r);
        const auto quad = adaptive_simpson(
            [&](double t) { return fplus0_of_dilate(f, ctx, t) / (1.0 - t); }, 0.0, r,
            0.5 * tol * u);
        row.fplus0_quad = quad.value / u;
        row.quad_residual = std::abs(row.fplus0 - row.fplus0_quad);

        row.bound = std::sqrt(dilate_bound_constant(ctx, r).value) * f_h2;
        row.ok = true;
    } catch (const certification_error& e) {
        row.ok = false;
        row.message = e.what();
    }
    return row;
}

}  // namespace

ScanTable scan_divergence(const TaylorSeries& f, const HbContext& ctx,
                          const Eigen::VectorXd& r_grid, double tol) {
    for (Index i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0 && r_grid[i] < 1.0))
            throw std::invalid_argument("scan_divergence: grid must lie in (0, 1)");
        if (i > 0 && r_grid[i] <= r_grid[i - 1])
            throw std::invalid_argument("scan_divergence: grid must be increasing");
    }
    ScanTable table;
    table.f_h2 = h2_norm(f);
    table.rows.resize(std::size_t(r_grid.size()));
    parallel_for(r_grid.size(), [&](Index i) {
        table.rows[std::size_t(i)] = scan_row(f, ctx, r_grid[i], tol, table.f_h2);
    });
    return table;
}

double lr_plus_identity_check(const TaylorSeries& f, const HbContext& ctx, double r, double tol) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("lr_plus_identity_check: r must lie in (0, 1)");
    const SummabilityMethod log_m = logarithmic_method();
    const PartialSumMean mean = mean_of_partial_sums(log_m, f, &ctx, r, tol);
    const double u = -std::log1p(-r);
    const auto quad = adaptive_simpson(
        [&](double t) { return fplus0_of_dilate(f, ctx, t) / (1.0 - t); }, 0.0, r, 0.5 * tol * u);
    return std::abs(mean.norm->f_plus.coeff(0) - quad.value / u);
}

std::vector<ContinuityRow> dilate_continuity_probe(const TaylorSeries& f, const HbContext& ctx,
                                                   double t0,
                                                   const Eigen::VectorXd& delta_grid) {
    if (!(t0 >= 0.0 && t0 < 1.0))
        throw std::invalid_argument("dilate_continuity_probe: t0 must lie in [0, 1)");
    std::vector<ContinuityRow> rows;
    rows.reserve(std::size_t(delta_grid.size()));
    for (Index i = 0; i < delta_grid.size(); ++i) {
        const double delta = delta_grid[i];
        if (!(t0 + delta >= 0.0 && t0 + delta < 1.0))
            throw std::invalid_argument("dilate_continuity_probe: t0 + delta must lie in [0, 1)");
        const TaylorSeries a = dilate(f, t0 + delta);
        const TaylorSeries b = dilate(f, t0);
        Eigen::VectorXcd diff = a.coeffs() - b.coeffs();
        TaylorSeries d = TaylorSeries::polynomial(std::move(diff));
        if (!f.is_exact()) {
            std::optional<TailBound> tb = f.tail_bound();
            if (tb) {
                tb->C *= 2.0;
                tb->R *= std::max(t0 + delta, t0);
            }
            d = TaylorSeries::truncation(d.coeffs(), tb);
        }
        rows.push_back({delta, hb_norm(d, ctx).norm_b});
    }
    return rows;
}

double split_lower_prefactor(double r0, double r) {
    if (!(r0 >= 0.0 && r0 < 1.0 && r > 0.0 && r < 1.0))
        throw std::invalid_argument("split_lower_prefactor: arguments must lie in (0, 1)");
    return std::log((1.0 - r0) / (1.0 - r)) / std::log(1.0 / (1.0 - r));
}

}  // namespace hbsumma
