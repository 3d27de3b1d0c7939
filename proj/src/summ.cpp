#include "hbsumma/summ.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "hbsumma/errors.hpp"
#include "hbsumma/quadrature.hpp"

namespace hbsumma {

namespace {

constexpr std::int64_t kTermCap = std::int64_t(1) << 24;

struct WeightSum {
    double value = 0.0;
    double tail_est = 0.0;  // 0 when a closed form was used
    bool exact = true;
};

// p(r): closed form when the descriptor carries one, doubling blocks with
// Cauchy stopping otherwise. Lenient mode returns the best estimate at the
// term cap instead of throwing (report paths that must not error).
WeightSum eval_weight_sum(const SummabilityMethod& m, double r, double rel_tol = 1e-15,
                          bool lenient = false) {
    if (m.weight_sum) return {m.weight_sum(r), 0.0, true};
    WeightSum out;
    out.exact = false;
    double acc = 0.0, rn = 1.0, last_block = 0.0;
    int quiet = 0;
    std::int64_t n = 0;
    for (std::int64_t block = 64; quiet < 2; block *= 2) {
        double bs = 0.0;
        for (; n < block; ++n) {
            bs += m.weight(n) * rn;
            rn *= r;
        }
        acc += bs;
        last_block = bs;
        quiet = (bs <= std::max(rel_tol * acc, 1e-300)) ? quiet + 1 : 0;
        if (quiet < 2 && n >= kTermCap) {
            if (!lenient)
                throw certification_error("weight sum did not converge within the term cap");
            out.value = acc;
            out.tail_est = 8.0 * last_block;
            return out;
        }
    }
    out.value = acc;
    out.tail_est = 2.0 * last_block;
    return out;
}

void require_power_series(const SummabilityMethod& m) {
    if (m.kind != SummabilityMethod::Kind::power_series || !m.weight)
        throw std::invalid_argument("operation requires a power-series method");
}

template <class T>
T zero_like(const T& v) {
    T z = v;
    z -= v;
    return z;
}

template <class T>
MeanResult<T> power_mean_impl(const SummabilityMethod& method, const std::function<T(Index)>& at,
                              double growth_C, double growth_R, double r, double tol) {
    require_power_series(method);
    if (!(tol > 0.0)) throw std::invalid_argument("means: tol must be > 0");
    if (!(r >= 0.0 && r < method.radius))
        throw std::invalid_argument("means: r outside [0, R)");
    const double y = r * growth_R;
    if (y >= method.weight_radius)
        throw certification_error("means: non-certifiable tail (r * R_x >= R_p)");

    const WeightSum pr = eval_weight_sum(method, r);
    const WeightSum py =
        (method.weight_tail || growth_R == 1.0) ? pr : eval_weight_sum(method, y);
    if (!(pr.value > 0.0)) throw certification_error("means: weight sum not positive");

    T acc = zero_like(at(Index(0)));
    double sy = 0.0, rn = 1.0, yn = 1.0;
    std::int64_t n = 0;
    double tail = std::numeric_limits<double>::infinity();
    for (; n < kTermCap; ++n) {
        const double pn = method.weight(n);
        acc += (pn * rn) * at(n);
        if (!method.weight_tail) sy += pn * yn;
        rn *= r;
        yn *= y;
        if (method.weight_tail) {
            tail = growth_C * method.weight_tail(Index(n), y) / pr.value;
        } else {
            // Difference form; resolution bottoms out near the rounding of
            // the accumulated partial sum.
            tail = growth_C * std::max(0.0, py.value - sy) / pr.value;
            if (py.value - sy <=
                8.0 * std::numeric_limits<double>::epsilon() * py.value)
                tail = growth_C * 8.0 * std::numeric_limits<double>::epsilon() * py.value /
                       pr.value;
        }
        if (tail <= tol) break;
    }
    if (tail > tol) throw certification_error("means: horizon cap reached before tolerance");
    MeanResult<T> out;
    out.value = acc / pr.value;
    out.horizon = n;
    out.tail_err = tail + growth_C * py.tail_est / pr.value;
    return out;
}

template <class T>
MeanResult<T> matrix_mean_impl(const SummabilityMethod& method, const std::function<T(Index)>& at,
                               double r) {
    if (!method.row) throw std::invalid_argument("means: matrix method without rows");
    if (!(r >= 0.0)) throw std::invalid_argument("means: r outside [0, R)");
    const Index m = Index(std::floor(r));
    const Eigen::VectorXd row = method.row(m);
    T acc = zero_like(at(Index(0)));
    for (Index n = 0; n < row.size(); ++n)
        if (row[n] != 0.0) acc += row[n] * at(n);
    return {std::move(acc), row.size(), 0.0};
}

template <class T>
MeanResult<T> kernel_mean_impl(const SummabilityMethod& method, const std::function<T(Index)>& at,
                               double growth_C, double growth_R, double x, double tol) {
    if (!method.log_kernel) throw std::invalid_argument("means: kernel method without kernel");
    if (!(x > 0.0 && x < method.radius)) throw std::invalid_argument("means: r outside (0, R)");

    // First pass in log space: find the kernel peak and a horizon where the
    // growth-adjusted terms have decayed far below it and keep decaying.
    const Index n0 = method.kernel_start;
    const double lr = std::log(growth_R);
    double peak_adj = -std::numeric_limits<double>::infinity();
    double peak_raw = -std::numeric_limits<double>::infinity();
    std::int64_t horizon = -1;
    double sigma = 1.0;
    double adj_next = 0.0;
    for (std::int64_t n = n0; n < kTermCap; ++n) {
        const double raw = method.log_kernel(Index(n), x);
        const double adj = raw + double(n) * lr;
        peak_raw = std::max(peak_raw, raw);
        peak_adj = std::max(peak_adj, adj);
        if (adj < peak_adj - 60.0) {
            adj_next = method.log_kernel(Index(n + 1), x) + double(n + 1) * lr;
            sigma = std::exp(adj_next - adj);
            if (sigma < 0.9) {
                horizon = n;
                break;
            }
        }
    }
    if (horizon < 0) throw certification_error("means: kernel horizon cap reached");

    // Second pass relative to the raw peak so nothing overflows.
    double mass_shifted = 0.0;
    T acc = zero_like(at(Index(0)));
    for (std::int64_t n = n0; n <= horizon; ++n) {
        const double w = std::exp(method.log_kernel(Index(n), x) - peak_raw);
        mass_shifted += w;
        acc += w * at(Index(n));
    }
    if (!(mass_shifted > 0.0))
        throw certification_error("means: kernel normalization vanished");

    // Geometric tail beyond the horizon (ratio sigma < 0.9 and decreasing for
    // the gamma-normalized kernels handled here), for both the numerator and
    // the truncated normalizing mass.
    const double numer_tail = growth_C * std::exp(adj_next - peak_raw) / (1.0 - sigma);
    const double mass_tail_rel =
        std::exp(method.log_kernel(Index(horizon + 1), x) - peak_raw) /
        ((1.0 - sigma) * mass_shifted);

    MeanResult<T> out;
    out.horizon = horizon;
    if (method.kernel_normalized) {
        out.value = acc / mass_shifted;
        out.tail_err = numer_tail / mass_shifted + growth_C * mass_tail_rel;
    } else {
        out.value = std::exp(peak_raw) * acc;
        out.tail_err = std::exp(peak_raw) * numer_tail;
    }
    if (out.tail_err > tol)
        throw certification_error("means: kernel tail exceeds tolerance");
    return out;
}

template <class T>
MeanResult<T> means_impl(const SummabilityMethod& method, const std::function<T(Index)>& at,
                         double growth_C, double growth_R, double r, double tol) {
    switch (method.kind) {
        case SummabilityMethod::Kind::power_series:
            return power_mean_impl<T>(method, at, growth_C, growth_R, r, tol);
        case SummabilityMethod::Kind::matrix:
            return matrix_mean_impl<T>(method, at, r);
        case SummabilityMethod::Kind::kernel:
            return kernel_mean_impl<T>(method, at, growth_C, growth_R, r, tol);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

double binomial_weight(Index n, double alpha) {
    if (n == 0) return 1.0;
    const double rounded = std::round(alpha);
    if (alpha == rounded && rounded >= 0.0 && rounded <= 64.0) {
        // Integer order: the exact product prod_{k=1..alpha} (n+k)/k keeps
        // full relative precision where the log-gamma difference cannot
        // (lgamma(1e6) carries ~2e-9 of absolute rounding).
        double acc = 1.0;
        for (int k = 1; k <= int(rounded); ++k) acc *= (double(n) + double(k)) / double(k);
        return acc;
    }
    return std::exp(std::lgamma(double(n) + alpha + 1.0) - std::lgamma(double(n) + 1.0) -
                    std::lgamma(alpha + 1.0));
}

SummabilityMethod abel_method() {
    SummabilityMethod m;
    m.kind = SummabilityMethod::Kind::power_series;
    m.name = "abel";
    m.note = "power-series weights p_n = 1; same weights as gen-abel:0";
    m.radius = 1.0;
    m.weight = [](Index) { return 1.0; };
    m.weight_radius = 1.0;
    m.weight_sum = [](double r) { return 1.0 / (1.0 - r); };
    m.weight_tail = [](Index h, double y) {
        return std::pow(y, double(h + 1)) / (1.0 - y);
    };
    return m;
}

SummabilityMethod gen_abel_method(double alpha) {
    if (!(alpha > -1.0)) throw std::invalid_argument("gen_abel: alpha must be > -1");
    SummabilityMethod m;
    m.kind = SummabilityMethod::Kind::power_series;
    m.name = "gen-abel:" + std::to_string(alpha);
    m.note = "weights binomial(n+alpha, alpha); order 0 coincides with the classical "
             "Abel weights (the partial-sum identity pins that labeling)";
    m.radius = 1.0;
    m.weight = [alpha](Index n) { return binomial_weight(n, alpha); };
    m.weight_radius = 1.0;
    m.weight_sum = [alpha](double r) { return std::pow(1.0 - r, -(1.0 + alpha)); };
    m.weight_tail = [alpha](Index h, double y) {
        // term ratio y (n+1+alpha)/(n+1) is monotone toward y; once below 1
        // the remainder is dominated geometrically
        const double q = alpha >= 0.0 ? y * (1.0 + alpha / double(h + 2)) : y;
        if (q >= 1.0) return std::numeric_limits<double>::infinity();
        return binomial_weight(h + 1, alpha) * std::pow(y, double(h + 1)) / (1.0 - q);
    };
    return m;
}

SummabilityMethod logarithmic_method() {
    SummabilityMethod m;
    m.kind = SummabilityMethod::Kind::power_series;
    m.name = "log";
    m.radius = 1.0;
    m.weight = [](Index n) { return 1.0 / double(n + 1); };
    m.weight_radius = 1.0;
    m.weight_sum = [](double r) {
        if (r == 0.0) return 1.0;
        return -std::log1p(-r) / r;
    };
    m.weight_tail = [](Index h, double y) {
        return std::pow(y, double(h + 1)) / (double(h + 2) * (1.0 - y));
    };
    return m;
}

SummabilityMethod cesaro_method() {
    SummabilityMethod m;
    m.kind = SummabilityMethod::Kind::matrix;
    m.name = "cesaro";
    m.radius = std::numeric_limits<double>::infinity();
    m.row = [](Index mm) {
        return Eigen::VectorXd::Constant(mm + 1, 1.0 / double(mm + 1));
    };
    return m;
}

SummabilityMethod borel_method(double alpha, double beta, bool raw) {
    if (!(alpha > 0.0)) throw std::invalid_argument("borel: alpha must be > 0");
    SummabilityMethod m;
    m.kind = SummabilityMethod::Kind::kernel;
    m.name = (raw ? "borel-raw:" : "borel:") + std::to_string(alpha) + "," + std::to_string(beta);
    if (!raw)
        m.note = "kernel x^(alpha n + beta - 1)/Gamma(alpha n + beta), normalized by its own "
                 "sum so the total mass is 1; raw=true reproduces the undamped display";
    m.radius = std::numeric_limits<double>::infinity();
    Index start = 0;
    while (alpha * double(start) + beta <= 1.0) ++start;
    m.kernel_start = start;
    m.kernel_normalized = !raw;
    m.log_kernel = [alpha, beta, start](Index n, double x) {
        if (n < start) return -std::numeric_limits<double>::infinity();
        const double a = alpha * double(n) + beta;
        return (a - 1.0) * std::log(x) - std::lgamma(a);
    };
    return m;
}

SummabilityMethod identity_method() {
    SummabilityMethod m;
    m.kind = SummabilityMethod::Kind::matrix;
    m.name = "identity";
    m.note = "matrix row m selects the m-th sequence entry";
    m.radius = std::numeric_limits<double>::infinity();
    m.row = [](Index mm) {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(mm + 1);
        r[mm] = 1.0;
        return r;
    };
    return m;
}

SummabilityMethod power_series_method(std::string name, std::function<double(Index)> weights,
                                      double weight_radius) {
    if (!weights) throw std::invalid_argument("power_series_method: weights required");
    if (!(weight_radius > 0.0))
        throw std::invalid_argument("power_series_method: weight radius must be > 0");
    if (!(weights(0) > 0.0)) throw std::invalid_argument("power_series_method: p_0 must be > 0");
    for (Index n = 0; n <= 4096; ++n)
        if (weights(n) < 0.0)
            throw std::invalid_argument("power_series_method: weights must be nonnegative");
    SummabilityMethod m;
    m.kind = SummabilityMethod::Kind::power_series;
    m.name = std::move(name);
    m.radius = weight_radius;
    m.weight = std::move(weights);
    m.weight_radius = weight_radius;
    return m;
}

SummabilityMethod constant_row_counterexample() {
    SummabilityMethod m;
    m.kind = SummabilityMethod::Kind::matrix;
    m.name = "const-row";
    m.note = "every row equals (1, 0, 0, ...); k_0(m) does not tend to 0";
    m.radius = std::numeric_limits<double>::infinity();
    m.row = [](Index) { return Eigen::VectorXd::Ones(1); };
    return m;
}

SummabilityMethod builtin(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto parse1 = [&]() {
        std::size_t used = 0;
        const double v = std::stod(args, &used);
        if (used != args.size()) throw std::invalid_argument("builtin: bad parameter: " + args);
        return v;
    };
    auto parse2 = [&]() -> std::pair<double, double> {
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("builtin: expected two parameters: " + args);
        return {std::stod(args.substr(0, comma)), std::stod(args.substr(comma + 1))};
    };
    if (head == "abel") return abel_method();
    if (head == "gen-abel" || head == "gen_abel") return gen_abel_method(parse1());
    if (head == "log" || head == "logarithmic") return logarithmic_method();
    if (head == "cesaro") return cesaro_method();
    if (head == "borel") {
        const auto [a, b] = parse2();
        return borel_method(a, b, false);
    }
    if (head == "borel-raw") {
        const auto [a, b] = parse2();
        return borel_method(a, b, true);
    }
    if (head == "identity") return identity_method();
    if (head == "const-row") return constant_row_counterexample();
    throw std::invalid_argument("builtin: unknown method: " + spec);
}

MeanResult<Complex> means(const SummabilityMethod& method, const ScalarSequence& seq, double r,
                          double tol) {
    return means_impl<Complex>(method, seq.at, seq.growth_C, seq.growth_R, r, tol);
}

MeanResult<Eigen::VectorXcd> means(const SummabilityMethod& method, const VectorSequence& seq,
                                   double r, double tol) {
    return means_impl<Eigen::VectorXcd>(method, seq.at, seq.growth_C, seq.growth_R, r, tol);
}

PartialSumMean mean_of_partial_sums(const SummabilityMethod& method, const TaylorSeries& f,
                                    const HbContext* ctx, double r, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("mean_of_partial_sums: tol must be > 0");
    PartialSumMean out;
    const Index deg = f.degree();

    if (method.kind == SummabilityMethod::Kind::power_series) {
        if (!(r >= 0.0 && r < method.radius))
            throw std::invalid_argument("mean_of_partial_sums: r outside [0, R)");
        const WeightSum pr = eval_weight_sum(method, r);
        if (!(pr.value > 0.0))
            throw certification_error("mean_of_partial_sums: weight sum not positive");
        // Coefficient m picks up the weight-tail multiplier
        // u_m = (sum_{n>=m} p_n r^n) / p(r) = 1 - S_{m-1}/p(r).
        Eigen::VectorXcd coeffs(deg + 1);
        double s_prev = 0.0, rn = 1.0;
        for (Index m = 0; m <= deg; ++m) {
            const double u = std::max(0.0, 1.0 - s_prev / pr.value);
            coeffs[m] = f.coeffs()[m] * u;
            s_prev += method.weight(m) * rn;
            rn *= r;
        }
        out.horizon = deg;
        out.tail_err = pr.exact ? 0.0 : pr.tail_est / pr.value;
        out.series = f.is_exact() ? TaylorSeries::polynomial(std::move(coeffs))
                                  : TaylorSeries::truncation(std::move(coeffs), f.tail_bound());
    } else if (method.kind == SummabilityMethod::Kind::matrix) {
        if (!method.row) throw std::invalid_argument("mean_of_partial_sums: matrix without rows");
        const Index mrow = Index(std::floor(r));
        const Eigen::VectorXd row = method.row(mrow);
        const Index dout = std::min<Index>(deg, row.size() - 1);
        Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(dout + 1);
        for (Index k = 0; k <= dout; ++k) {
            double wsum = 0.0;
            for (Index n = k; n < row.size(); ++n) wsum += row[n];
            coeffs[k] = f.coeffs()[k] * wsum;
        }
        out.horizon = row.size();
        out.tail_err = 0.0;
        if (f.is_exact()) {
            out.series = TaylorSeries::polynomial(std::move(coeffs));
        } else {
            std::optional<TailBound> tb = f.tail_bound();
            if (tb) tb->C *= row.cwiseAbs().sum();
            out.series = TaylorSeries::truncation(std::move(coeffs), tb);
        }
    } else {
        // Kernel methods: apply the generic vector mean to the sequence of
        // partial-sum coefficient vectors (stabilizing at f).
        double cbound = 0.0;
        for (Index k = 0; k <= deg; ++k) cbound = std::max(cbound, std::abs(f.coeffs()[k]));
        VectorSequence seq;
        seq.at = [&f, deg](Index n) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(deg + 1);
            const Index top = std::min(n, deg);
            v.head(top + 1) = f.coeffs().head(top + 1);
            return v;
        };
        seq.growth_C = std::max(cbound, 1e-300);
        seq.growth_R = 1.0;
        seq.norm = [](const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); };
        const MeanResult<Eigen::VectorXcd> mr = means(method, seq, r, tol);
        out.horizon = mr.horizon;
        out.tail_err = mr.tail_err;
        out.series = f.is_exact() ? TaylorSeries::polynomial(mr.value)
                                  : TaylorSeries::truncation(mr.value, f.tail_bound());
    }

    if (ctx) out.norm = hb_norm(out.series, *ctx);
    return out;
}

LogMeanIntegral log_mean_integral(const TaylorSeries& f, double r, double tol) {
    if (!f.is_exact()) throw std::invalid_argument("log_mean_integral: f must be a polynomial");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("log_mean_integral: r must lie in (0, 1)");
    const double u = -std::log1p(-r);  // log(1/(1-r))
    const Eigen::VectorXcd& c = f.coeffs();

    auto integrand = [&c](double t) {
        Eigen::VectorXcd g(c.size());
        double tm = 1.0;
        const double w = 1.0 / (1.0 - t);
        for (Index m = 0; m < c.size(); ++m) {
            g[m] = c[m] * (tm * w);
            tm *= t;
        }
        return g;
    };

    const auto quad = adaptive_simpson(integrand, 0.0, r, 0.5 * tol * u);
    LogMeanIntegral out;
    out.series = TaylorSeries::polynomial(quad.value / u);
    out.quad_error = quad.error_estimate / u;
    out.intervals = quad.intervals;
    return out;
}

RegularityReport regularity_report(const SummabilityMethod& method, double r0,
                                   const Eigen::VectorXd& r_grid, Index n_horizon) {
    if (n_horizon < 16) throw std::invalid_argument("regularity_report: horizon must be >= 16");
    std::vector<double> grid;
    for (Index i = 0; i < r_grid.size(); ++i)
        if (r_grid[i] >= r0 && r_grid[i] < method.radius) grid.push_back(r_grid[i]);
    std::sort(grid.begin(), grid.end());
    if (grid.size() < 4)
        throw std::invalid_argument("regularity_report: need at least 4 grid points in [R0, R)");

    RegularityReport rep;
    const std::size_t g = grid.size();
    const std::size_t q3 = (3 * g) / 4;

    // |k_n| over the grid for n <= horizon, plus per-point l1 mass and total mass.
    Eigen::MatrixXd kn(n_horizon + 1, g);
    Eigen::VectorXd l1(g), mass(g);

    if (method.kind == SummabilityMethod::Kind::power_series) {
        rep.p_check_applicable = true;
        Eigen::VectorXd pvals(g);
        for (std::size_t i = 0; i < g; ++i) {
            const double r = grid[i];
            const WeightSum p = eval_weight_sum(method, r, 1e-9, /*lenient=*/true);
            pvals[Index(i)] = p.value;
            double rn = 1.0;
            for (Index n = 0; n <= n_horizon; ++n) {
                kn(n, Index(i)) = method.weight(n) * rn / p.value;
                rn *= r;
            }
            // Nonnegative weights normalized by their own sum: the l1 mass and
            // the total mass are identically 1 whenever p(r) is finite.
            l1[Index(i)] = 1.0;
            mass[Index(i)] = 1.0;
        }
        bool increasing = true;
        for (std::size_t i = 1; i < g; ++i)
            if (pvals[Index(i)] < pvals[Index(i - 1)] * (1.0 - 1e-12)) increasing = false;
        rep.p_to_infinity = increasing && pvals[Index(g - 1)] >= 1.5 * pvals[Index(g / 2)];
        rep.detail = "power-series: l1 and mass are exactly 1 for nonnegative weights; "
                     "regularity hinges on p(r) -> infinity";
    } else if (method.kind == SummabilityMethod::Kind::matrix) {
        for (std::size_t i = 0; i < g; ++i) {
            const Eigen::VectorXd row = method.row(Index(std::floor(grid[i])));
            l1[Index(i)] = row.cwiseAbs().sum();
            mass[Index(i)] = row.sum();
            for (Index n = 0; n <= n_horizon; ++n)
                kn(n, Index(i)) = n < row.size() ? row[n] : 0.0;
        }
        rep.detail = "matrix: Silverman-Toeplitz conditions sampled on the given rows";
    } else {
        for (std::size_t i = 0; i < g; ++i) {
            const double x = grid[i];
            // Stable normalized kernel values through a shifted exponential sum.
            double peak = -std::numeric_limits<double>::infinity();
            std::int64_t horizon = -1;
            for (std::int64_t n = method.kernel_start; n < kTermCap; ++n) {
                const double lt = method.log_kernel(Index(n), x);
                peak = std::max(peak, lt);
                if (lt < peak - 60.0) {
                    horizon = n;
                    break;
                }
            }
            if (horizon < 0) throw certification_error("regularity_report: kernel horizon cap");
            double d = 0.0;
            for (std::int64_t n = method.kernel_start; n <= horizon; ++n)
                d += std::exp(method.log_kernel(Index(n), x) - peak);
            const double denom = method.kernel_normalized ? d : std::exp(-peak);
            for (Index n = 0; n <= n_horizon; ++n)
                kn(n, Index(i)) = std::exp(method.log_kernel(n, x) - peak) / denom;
            l1[Index(i)] = method.kernel_normalized ? 1.0 : d * std::exp(peak);
            mass[Index(i)] = l1[Index(i)];  // nonnegative kernels
        }
        rep.detail = method.kernel_normalized
                         ? "kernel: nonnegative and self-normalized, so l1 = mass = 1"
                         : "kernel: raw (unnormalized) mass reported";
    }

    rep.l1_sup = l1.maxCoeff();
    rep.bounded_l1 = rep.l1_sup < 1e6;
    rep.terminal_mass = mass[Index(g - 1)];
    rep.mass_to_one = true;
    for (std::size_t i = q3; i < g; ++i)
        if (std::abs(mass[Index(i)] - 1.0) > 1e-8) rep.mass_to_one = false;

    rep.terminal_kernel.resize(std::size_t(n_horizon) + 1);
    rep.pointwise_null = true;
    for (Index n = 0; n <= n_horizon; ++n) {
        const double last = std::abs(kn(n, Index(g - 1)));
        rep.terminal_kernel[std::size_t(n)] = last;
        const double peak = kn.row(n).cwiseAbs().maxCoeff();
        bool ok = last <= std::max(1e-6, 0.5 * peak);
        for (std::size_t i = q3; i + 1 < g && ok; ++i)
            if (std::abs(kn(n, Index(i + 1))) >
                std::abs(kn(n, Index(i))) * (1.0 + 1e-9) + 1e-12)
                ok = false;
        if (!ok) rep.pointwise_null = false;
    }

    rep.regular = rep.bounded_l1 && rep.pointwise_null && rep.mass_to_one &&
                  (!rep.p_check_applicable || rep.p_to_infinity);
    return rep;
}

}  // namespace hbsumma
