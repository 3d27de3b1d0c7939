#include "hbsumma/pair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hbsumma/errors.hpp"
#include "hbsumma/fft.hpp"
#include "hbsumma/roots.hpp"

namespace hbsumma {

namespace {

constexpr double kPi = std::numbers::pi;

Complex eval_poly(const Eigen::VectorXcd& c, Complex z) {
    Complex acc(0.0);
    for (Index n = c.size() - 1; n >= 0; --n) acc = acc * z + c[n];
    return acc;
}

double wrap_angle(double t) {
    t = std::fmod(t, 2.0 * kPi);
    if (t > kPi) t -= 2.0 * kPi;
    if (t < -kPi) t += 2.0 * kPi;
    return t;
}

// Laurent coefficients w_m of 1 - b(z) conj-reflect(b)(z), m = -d..d,
// returned as a vector indexed by m + d. Real-valued on the circle.
Eigen::VectorXcd laurent_one_minus_modsq(const Eigen::VectorXcd& b) {
    const Index d = b.size() - 1;
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(2 * d + 1);
    for (Index m = 0; m <= d; ++m) {
        Complex s(0.0);
        for (Index k = 0; k + m <= d; ++k) s += b[k + m] * std::conj(b[k]);
        w[d + m] -= s;
        if (m > 0) w[d - m] -= std::conj(s);
    }
    w[d] += Complex(1.0);
    return w;
}

// Band-limited interpolant of real samples on the uniform grid
// theta_j = offset + 2 pi j / M, built from the sample DFT. The Nyquist bin
// is dropped; for the smooth deflated data handled here it is negligible.
class CircleInterpolant {
public:
    CircleInterpolant(const Eigen::VectorXd& samples, double offset) : offset_(offset) {
        const Index m = samples.size();
        Eigen::VectorXcd spec = fft(samples);
        coeffs_ = spec.head(m / 2) / double(m);
    }

    double value(double theta) const { return moment<0>(theta); }
    double deriv(double theta) const { return moment<1>(theta); }
    double deriv2(double theta) const { return moment<2>(theta); }

private:
    template <int Order>
    double moment(double theta) const {
        const double t = theta - offset_;
        double acc = (Order == 0) ? coeffs_[0].real() : 0.0;
        for (Index k = 1; k < coeffs_.size(); ++k) {
            const Complex e(std::cos(k * t), std::sin(k * t));
            Complex term = coeffs_[k] * e;
            if constexpr (Order == 1) term *= Complex(0.0, double(k));
            if constexpr (Order == 2) term *= -double(k) * double(k);
            acc += 2.0 * term.real();
        }
        return acc;
    }

    Eigen::VectorXcd coeffs_;
    double offset_;
};

struct DetectedZero {
    double theta;
    int multiplicity;
};

// Locates boundary zeros of w (assumed >= 0, zeros of even order) as deep
// local minima of the band-limited interpolant, Newton-refined.
std::vector<double> detect_zeros(const Eigen::VectorXd& w, double offset) {
    const Index m = w.size();
    const double h = 2.0 * kPi / double(m);
    const double maxw = w.maxCoeff();
    if (maxw <= 0.0) throw std::invalid_argument("outer_from_log_modulus: w is identically zero");
    const double detect_thresh = maxw * std::pow(8.0 * kPi / double(m), 2.0);
    const double accept_thresh = maxw * 1e-10;

    std::vector<Index> candidates;
    for (Index j = 0; j < m; ++j) {
        const double prev = w[(j + m - 1) % m], next = w[(j + 1) % m];
        if (w[j] <= prev && w[j] <= next && w[j] < detect_thresh) candidates.push_back(j);
    }
    if (candidates.empty()) return {};

    CircleInterpolant interp(w, offset);
    std::vector<double> zeros;
    for (Index j : candidates) {
        const double t0 = offset + h * double(j);
        double t = t0;
        for (int it = 0; it < 40; ++it) {
            const double d1 = interp.deriv(t), d2 = interp.deriv2(t);
            if (d2 <= 0.0) break;
            double step = d1 / d2;
            step = std::clamp(step, -h, h);
            t -= step;
            t = std::clamp(t, t0 - h, t0 + h);
            if (std::abs(step) < 1e-15) break;
        }
        if (interp.value(t) >= accept_thresh) continue;
        bool duplicate = false;
        for (double z : zeros)
            if (std::abs(wrap_angle(z - t)) < 1.5 * h) duplicate = true;
        if (!duplicate) zeros.push_back(t);
    }
    return zeros;
}

// Divides out 4 sin^2((theta - theta*)/2) at every grid point; samples too
// close to theta* are rebuilt by Lagrange cubic interpolation from their
// nearest safe neighbours.
void deflate_zero(Eigen::VectorXd& w, double offset, double theta_star) {
    const Index m = w.size();
    const double h = 2.0 * kPi / double(m);
    std::vector<Index> flagged;
    for (Index j = 0; j < m; ++j) {
        const double t = offset + h * double(j);
        const double s = std::sin(0.5 * wrap_angle(t - theta_star));
        const double denom = 4.0 * s * s;
        if (std::abs(wrap_angle(t - theta_star)) < 0.70 * h) {
            flagged.push_back(j);
        } else {
            w[j] /= denom;
        }
    }
    auto is_flagged = [&](Index j) {
        return std::find(flagged.begin(), flagged.end(), j) != flagged.end();
    };
    for (Index j : flagged) {
        std::vector<Index> nbr;
        for (Index off = 1; off < m && nbr.size() < 4; ++off) {
            const Index lo = (j + m - off) % m, hi = (j + off) % m;
            if (!is_flagged(lo)) nbr.push_back(lo);
            if (nbr.size() < 4 && !is_flagged(hi)) nbr.push_back(hi);
        }
        const double tj = offset + h * double(j);
        double acc = 0.0;
        for (std::size_t p = 0; p < nbr.size(); ++p) {
            // unwrapped angular coordinates relative to theta_j
            const double xp = wrap_angle(offset + h * double(nbr[p]) - tj);
            double lag = 1.0;
            for (std::size_t q = 0; q < nbr.size(); ++q) {
                if (q == p) continue;
                const double xq = wrap_angle(offset + h * double(nbr[q]) - tj);
                lag *= (0.0 - xq) / (xp - xq);
            }
            acc += lag * w[nbr[p]];
        }
        w[j] = acc;
    }
}

TaylorSeries outer_impl(const Eigen::VectorXd& w_in, Index order, const OuterOptions& opts,
                        bool allow_stability_recursion);

}  // namespace

const char* to_string(ExtremeVerdict v) {
    switch (v) {
        case ExtremeVerdict::non_extreme: return "non-extreme";
        case ExtremeVerdict::extreme: return "extreme";
        default: return "inconclusive";
    }
}

Eigen::VectorXd sample_one_minus_modsq(const TaylorSeries& b, Index grid_size, double offset) {
    if (grid_size < 8) throw std::invalid_argument("grid size too small");
    Eigen::VectorXd w(grid_size);
    for (Index j = 0; j < grid_size; ++j) {
        const double theta = offset + 2.0 * kPi * double(j) / double(grid_size);
        const Complex z(std::cos(theta), std::sin(theta));
        const double mod = std::abs(eval_poly(b.coeffs(), z));
        if (mod > 1.0 + 1e-12) throw std::invalid_argument("symbol exceeds unit ball");
        w[j] = std::max(0.0, 1.0 - mod * mod);
    }
    return w;
}

NonExtremenessReport check_nonextreme(const TaylorSeries& b, Index grid_size) {
    if (!b.is_exact()) throw std::invalid_argument("check_nonextreme: b must be a polynomial");
    if (!is_power_of_two(grid_size) || grid_size < 256)
        throw std::invalid_argument("check_nonextreme: grid size must be a power of two >= 256");

    NonExtremenessReport report;
    constexpr double kClipFloor = 1e-300;
    for (int level = 0; level < 3; ++level) {
        const Index m = grid_size << level;
        // Midpoint sampling: isolated boundary zeros are never hit exactly.
        const double offset = kPi / double(m);
        const Eigen::VectorXd w = sample_one_minus_modsq(b, m, offset);
        double acc = 0.0;
        for (Index j = 0; j < m; ++j) acc += std::log(std::max(w[j], kClipFloor));
        report.level_estimates[level] = acc / double(m);
        if (level == 2) report.min_modulus_gap = w.minCoeff();
    }
    const double e1 = report.level_estimates[0];
    const double e2 = report.level_estimates[1];
    const double e3 = report.level_estimates[2];
    report.log_integral_estimate = e3;

    if ((e1 - e2 > 1.0 && e2 - e3 > 1.0) || e3 <= -50.0) {
        report.verdict = ExtremeVerdict::extreme;
    } else if (std::abs(e3 - e2) < 1e-3 && e3 > -50.0) {
        report.verdict = ExtremeVerdict::non_extreme;
    } else {
        report.verdict = ExtremeVerdict::inconclusive;
    }
    return report;
}

PythagoreanPair fejer_riesz(const TaylorSeries& b, double tol, const FejerRieszOptions& opts) {
    if (!b.is_exact()) throw std::invalid_argument("fejer_riesz: b must be a polynomial");
    if (!(tol > 0.0)) throw std::invalid_argument("fejer_riesz: tol must be > 0");

    // Also performs the unit-ball check.
    const Eigen::VectorXd wgrid = sample_one_minus_modsq(b, opts.grid_size, 0.0);

    const Index d = b.degree();
    const Eigen::VectorXcd w = laurent_one_minus_modsq(b.coeffs());

    double offdiag = 0.0;
    for (Index m = 1; m <= d; ++m) offdiag = std::max(offdiag, std::abs(w[d + m]));

    Eigen::VectorXcd ahat;  // monic-at-0 candidate, ahat(0) = 1
    double pairing_residual = 0.0;
    if (offdiag == 0.0) {
        // |b| constant on the circle.
        if (w[d].real() <= 0.0)
            throw std::invalid_argument("fejer_riesz: 1 - |b|^2 vanishes identically");
        ahat = Eigen::VectorXcd::Ones(1);
    } else {
        // Strip exact zeros at both ends (root-at-zero / root-at-infinity pairs).
        Index lo = 0, hi = 2 * d;
        while (lo < hi && w[lo] == Complex(0.0) && w[hi] == Complex(0.0)) {
            ++lo;
            --hi;
        }
        const Eigen::VectorXcd stripped = w.segment(lo, hi - lo + 1);
        Eigen::VectorXcd roots = polynomial_roots(stripped);

        std::vector<Complex> circle, inside, outside;
        for (Index i = 0; i < roots.size(); ++i) {
            const double mod = std::abs(roots[i]);
            if (std::abs(mod - 1.0) < opts.circle_tol)
                circle.push_back(roots[i]);
            else if (mod < 1.0)
                inside.push_back(roots[i]);
            else
                outside.push_back(roots[i]);
        }

        std::vector<Complex> selected;

        // Circle roots: cluster by angle, require even multiplicity, collapse
        // each cluster to kappa copies of the projected mean. The eigensolver
        // splits a double root by ~sqrt(eps); the cluster mean restores
        // near-machine accuracy.
        std::sort(circle.begin(), circle.end(),
                  [](const Complex& x, const Complex& y) { return std::arg(x) < std::arg(y); });
        // Rotate so the widest angular gap sits at the list boundary; clusters
        // then never wrap around +-pi.
        if (circle.size() > 1) {
            std::size_t gap_at = 0;
            double widest = -1.0;
            for (std::size_t k = 0; k < circle.size(); ++k) {
                const std::size_t nk = (k + 1) % circle.size();
                double gap = std::arg(circle[nk]) - std::arg(circle[k]);
                if (gap <= 0.0) gap += 2.0 * kPi;
                if (gap > widest) {
                    widest = gap;
                    gap_at = nk;
                }
            }
            std::rotate(circle.begin(), circle.begin() + gap_at, circle.end());
        }
        std::size_t i = 0;
        while (i < circle.size()) {
            std::size_t j = i + 1;
            while (j < circle.size() &&
                   std::abs(wrap_angle(std::arg(circle[j]) - std::arg(circle[j - 1]))) < 1e-3)
                ++j;
            const std::size_t size = j - i;
            if (size % 2 != 0)
                throw certification_error("factorization unstable: odd circle-root multiplicity");
            Complex mean(0.0);
            for (std::size_t k = i; k < j; ++k) mean += circle[k];
            mean /= double(size);
            const double mod = std::abs(mean);
            if (mod == 0.0) throw certification_error("factorization unstable");
            mean /= mod;
            for (std::size_t k = 0; k < size / 2; ++k) selected.push_back(mean);
            i = j;
        }

        // Off-circle roots: match every inside root to its reciprocal-conjugate
        // partner outside, keep the outside one.
        if (inside.size() != outside.size())
            throw certification_error("factorization unstable: unbalanced root pairing");
        std::vector<bool> used(outside.size(), false);
        for (const Complex& rho : inside) {
            const Complex target = 1.0 / std::conj(rho);
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_k = 0;
            for (std::size_t k = 0; k < outside.size(); ++k) {
                if (used[k]) continue;
                const double dist = std::abs(outside[k] - target);
                if (dist < best) {
                    best = dist;
                    best_k = k;
                }
            }
            const double rel = best / std::max(1.0, std::abs(target));
            pairing_residual = std::max(pairing_residual, rel);
            if (rel > opts.pairing_tol)
                throw certification_error("factorization unstable: root pairing failed");
            used[best_k] = true;
            selected.push_back(polish_root(stripped, outside[best_k]));
        }

        std::sort(selected.begin(), selected.end(), [](const Complex& x, const Complex& y) {
            if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
            return std::arg(x) < std::arg(y);
        });

        ahat = Eigen::VectorXcd::Ones(1);
        for (const Complex& rho : selected) {
            Eigen::VectorXcd next = Eigen::VectorXcd::Zero(ahat.size() + 1);
            next.head(ahat.size()) += ahat;
            next.tail(ahat.size()) -= ahat / rho;
            ahat = std::move(next);
        }
    }

    // Positive scale from the validation grid, taken where |ahat| is largest.
    Index jstar = 0;
    double best = -1.0;
    Eigen::VectorXd amod2(opts.grid_size);
    for (Index j = 0; j < opts.grid_size; ++j) {
        const double theta = 2.0 * kPi * double(j) / double(opts.grid_size);
        const Complex z(std::cos(theta), std::sin(theta));
        amod2[j] = std::norm(eval_poly(ahat, z));
        if (amod2[j] > best) {
            best = amod2[j];
            jstar = j;
        }
    }
    if (best <= 0.0) throw certification_error("factorization unstable");
    const double gamma = std::sqrt(wgrid[jstar] / amod2[jstar]);
    if (!(gamma > 0.0)) throw certification_error("factorization unstable");

    Eigen::VectorXcd acoeffs = gamma * ahat;
    double grid_residual = 0.0;
    for (Index j = 0; j < opts.grid_size; ++j)
        grid_residual = std::max(grid_residual,
                                 std::abs(gamma * gamma * amod2[j] - wgrid[j]));
    if (grid_residual > tol)
        throw certification_error("factorization residual exceeds tolerance");

    PythagoreanPair pair;
    pair.b = b;
    pair.a = TaylorSeries::polynomial(std::move(acoeffs));
    pair.grid_residual = grid_residual;
    const PhiCoefficients pc = phi_coefficients(pair, opts.phi_order);
    pair.phi = pc.coeffs;
    pair.phi_residual = pc.multiply_back_residual;
    return pair;
}

namespace {

TaylorSeries outer_impl(const Eigen::VectorXd& w_in, Index order, const OuterOptions& opts,
                        bool allow_stability_recursion) {
    const Index m = w_in.size();
    if (!is_power_of_two(m) || m < 64)
        throw std::invalid_argument("outer_from_log_modulus: grid must be a power of two >= 64");
    if (order < 0 || order > m / 4)
        throw std::invalid_argument("outer_from_log_modulus: order must lie in [0, M/4]");
    if (w_in.minCoeff() < -1e-12)
        throw std::invalid_argument("outer_from_log_modulus: samples must be nonnegative");

    Eigen::VectorXd w = w_in.cwiseMax(0.0);

    // Deflate boundary zeros analytically: each even-order zero at e^{i t*}
    // contributes an exact outer factor (1 - e^{-i t*} z)^kappa, and removing
    // it leaves a log-integrable-smooth profile the FFT handles spectrally.
    std::vector<DetectedZero> zeros;
    for (int round = 0; round < 8; ++round) {
        const std::vector<double> found = detect_zeros(w, opts.grid_offset);
        bool changed = false;
        for (double t : found) {
            bool merged = false;
            for (auto& z : zeros) {
                if (std::abs(wrap_angle(z.theta - t)) < 4.0 * kPi / double(m)) {
                    ++z.multiplicity;
                    deflate_zero(w, opts.grid_offset, z.theta);
                    merged = true;
                    changed = true;
                    break;
                }
            }
            if (!merged) {
                zeros.push_back({t, 1});
                deflate_zero(w, opts.grid_offset, t);
                changed = true;
            }
        }
        if (!changed) break;
    }

    const Index budget = opts.clip_budget >= 0 ? opts.clip_budget : std::max<Index>(1, m / 512);
    Index clipped = 0;
    Eigen::VectorXd u(m);
    for (Index j = 0; j < m; ++j) {
        if (w[j] < opts.clip_floor) {
            w[j] = opts.clip_floor;
            ++clipped;
        }
        u[j] = std::log(w[j]);
    }
    if (clipped > budget)
        throw certification_error("outer_from_log_modulus: samples below clip floor exceed budget");

    // Fourier coefficients of log w; the analytic completion halves the mean
    // term and keeps the positive frequencies.
    const Eigen::VectorXcd spec = fft(u);
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(order + 1);
    g[0] = Complex(0.5 * spec[0].real() / double(m), 0.0);
    for (Index k = 1; k <= order; ++k) {
        const Complex phase(std::cos(-double(k) * opts.grid_offset),
                            std::sin(-double(k) * opts.grid_offset));
        g[k] = phase * spec[k] / double(m);
    }

    // exp of the truncated series via the derivative recurrence.
    Eigen::VectorXcd smooth = Eigen::VectorXcd::Zero(order + 1);
    smooth[0] = Complex(std::exp(g[0].real()), 0.0);
    for (Index n = 1; n <= order; ++n) {
        Complex s(0.0);
        for (Index k = 1; k <= n; ++k) s += double(k) * g[k] * smooth[n - k];
        smooth[n] = s / double(n);
    }

    // Multiply the deflated outer factors back in, truncating at the order.
    Eigen::VectorXcd acoeffs = std::move(smooth);
    for (const auto& z : zeros) {
        const Complex zbar(std::cos(-z.theta), std::sin(-z.theta));
        for (int rep = 0; rep < z.multiplicity; ++rep) {
            Eigen::VectorXcd next = acoeffs;
            for (Index n = order; n >= 1; --n) next[n] -= zbar * acoeffs[n - 1];
            acoeffs = std::move(next);
        }
    }

    if (allow_stability_recursion && opts.check_stability && (!zeros.empty() || clipped > 0)) {
        // Boundary-zero handling must be stable under grid halving.
        Eigen::VectorXd half(m / 2);
        for (Index j = 0; j < m / 2; ++j) half[j] = w_in[2 * j];
        OuterOptions sub = opts;
        sub.check_stability = false;
        const Index sub_order = std::min(order, m / 8);
        const TaylorSeries coarse = outer_impl(half, sub_order, sub, false);
        double drift = 0.0;
        for (Index k = 0; k <= sub_order; ++k)
            drift = std::max(drift, std::abs(acoeffs[k] - coarse.coeffs()[k]));
        if (drift > opts.stability_tol)
            throw certification_error(
                "outer_from_log_modulus: boundary-zero handling unstable under grid refinement");
    }

    return TaylorSeries::truncation(std::move(acoeffs));
}

}  // namespace

TaylorSeries outer_from_log_modulus(const Eigen::VectorXd& w, Index order,
                                    const OuterOptions& opts) {
    return outer_impl(w, order, opts, true);
}

PhiCoefficients phi_coefficients(const PythagoreanPair& pair, Index order) {
    if (pair.a.coeff(0) == Complex(0.0))
        throw std::invalid_argument("phi_coefficients: a(0) must be nonzero");
    PhiCoefficients out;
    out.coeffs = divide(pair.b, pair.a, order);
    const TaylorSeries back = cauchy_product(out.coeffs, pair.a);
    double res = 0.0;
    for (Index n = 0; n <= std::min(order, back.degree()); ++n)
        res = std::max(res, std::abs(back.coeff(n) - pair.b.coeff(n)));
    out.multiply_back_residual = res;
    return out;
}

PythagoreanPair pair_from_modulus(const TaylorSeries& b, Index grid_size, Index order,
                                  double tol, Index phi_order) {
    const Eigen::VectorXd w = sample_one_minus_modsq(b, grid_size, 0.0);
    TaylorSeries a = outer_from_log_modulus(w, order);

    PythagoreanPair pair;
    pair.b = b;
    pair.a = std::move(a);
    double residual = 0.0;
    for (Index j = 0; j < grid_size; ++j) {
        const double theta = 2.0 * kPi * double(j) / double(grid_size);
        const Complex z(std::cos(theta), std::sin(theta));
        const double amod2 = std::norm(eval_poly(pair.a.coeffs(), z));
        residual = std::max(residual, std::abs(amod2 - w[j]));
    }
    if (residual > tol)
        throw certification_error("pair_from_modulus: residual exceeds tolerance");
    pair.grid_residual = residual;

    const Index po = std::min<Index>(phi_order, pair.a.degree());
    const PhiCoefficients pc = phi_coefficients(pair, po);
    pair.phi = pc.coeffs;
    pair.phi_residual = pc.multiply_back_residual;
    return pair;
}

PythagoreanPair halfshift_pair(Index phi_order) {
    if (phi_order < 0) throw std::invalid_argument("halfshift_pair: order must be >= 0");
    PythagoreanPair pair;
    Eigen::VectorXcd b(2), a(2);
    b << Complex(0.5), Complex(0.5);
    a << Complex(0.5), Complex(-0.5);
    pair.b = TaylorSeries::polynomial(b);
    pair.a = TaylorSeries::polynomial(a);
    Eigen::VectorXcd phi = Eigen::VectorXcd::Constant(phi_order + 1, Complex(2.0));
    phi[0] = Complex(1.0);
    pair.phi = TaylorSeries::truncation(std::move(phi), TailBound{2.0, 1.0});
    pair.grid_residual = 0.0;
    pair.phi_residual = 0.0;
    return pair;
}

}  // namespace hbsumma
