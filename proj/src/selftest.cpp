#include "hbsumma/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "hbsumma/hb.hpp"
#include "hbsumma/io.hpp"
#include "hbsumma/lab.hpp"
#include "hbsumma/pair.hpp"
#include "hbsumma/series.hpp"
#include "hbsumma/summ.hpp"

namespace hbsumma::selftest {

namespace {

using Clock = std::chrono::steady_clock;

TaylorSeries random_poly(DetRng& rng, Index max_degree) {
    const Index deg = rng.below(max_degree + 1);
    Eigen::VectorXcd c(deg + 1);
    for (Index i = 0; i <= deg; ++i)
        c[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return TaylorSeries::polynomial(std::move(c));
}

double coeff_distance(const TaylorSeries& p, const TaylorSeries& q) {
    double d = 0.0;
    const Index top = std::max(p.degree(), q.degree());
    for (Index n = 0; n <= top; ++n) d = std::max(d, std::abs(p.coeff(n) - q.coeff(n)));
    return d;
}

// Lacunary polynomial sum_{i=0..k} s_i z^(2^i), s_i = +-1 alternating when
// signed.
TaylorSeries lacunary_poly(int k, bool signed_family) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero((Index(1) << k) + 1);
    for (int i = 0; i <= k; ++i)
        c[Index(1) << i] = Complex(signed_family && (i % 2) ? -1.0 : 1.0, 0.0);
    return TaylorSeries::polynomial(std::move(c));
}

double fit_base_over_prefix(const std::vector<double>& norms, Index n_max) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    Index count = 0;
    for (Index n = 0; n <= n_max; ++n) {
        const double v = norms[std::size_t(n)];
        if (v <= 0.0) continue;
        const double y = std::log(v);
        sx += double(n);
        sy += y;
        sxx += double(n) * double(n);
        sxy += double(n) * y;
        ++count;
    }
    const double denom = double(count) * sxx - sx * sx;
    return std::exp((double(count) * sxy - sx * sy) / denom);
}

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& s) {
        if (detail.tellp() > 0) detail << "; ";
        detail << s;
    }
};

CriterionResult run_criterion(int id, const std::string& name, double time_budget_s,
                              const std::function<void(Checker&)>& body) {
    CriterionResult res;
    res.id = id;
    res.name = name;
    Checker chk;
    const auto t0 = Clock::now();
    try {
        body(chk);
    } catch (const std::exception& e) {
        chk.require(false, std::string("exception: ") + e.what());
    }
    res.elapsed_s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (time_budget_s > 0.0 && res.elapsed_s >= time_budget_s) {
        chk.require(false, "time budget " + format_number(time_budget_s) + " s exceeded");
    }
    res.passed = chk.ok;
    res.detail = chk.detail.str();
    return res;
}

void criterion_pythagorean(Checker& chk) {
    const TaylorSeries b = TaylorSeries::polynomial(
        (Eigen::VectorXcd(2) << Complex(0.5), Complex(0.5)).finished());
    const PythagoreanPair pair = fejer_riesz(b, 1e-12);
    chk.require(pair.grid_residual < 1e-12,
                "grid residual " + format_number(pair.grid_residual) + " >= 1e-12");
    chk.require(pair.a.degree() == 1, "mate degree != 1");
    chk.require(std::abs(pair.a.coeff(0) - Complex(0.5)) < 1e-12, "a_0 != 0.5");
    chk.require(std::abs(pair.a.coeff(1) - Complex(-0.5)) < 1e-12, "a_1 != -0.5");
    chk.note("residual " + format_number(pair.grid_residual));
}

void criterion_exact_norms(Checker& chk) {
    const HbContext ctx = HbContext::from_pair(halfshift_pair(64));
    const HbVector n1 = hb_norm(TaylorSeries::polynomial(Eigen::VectorXcd::Ones(1)), ctx);
    const HbVector nz = hb_norm(
        TaylorSeries::polynomial((Eigen::VectorXcd(2) << Complex(0.0), Complex(1.0)).finished()),
        ctx);
    chk.require(std::abs(n1.norm_b * n1.norm_b - 2.0) < 1e-12,
                "||1||_b^2 = " + format_number(n1.norm_b * n1.norm_b) + " != 2");
    chk.require(std::abs(nz.norm_b * nz.norm_b - 6.0) < 1e-12,
                "||z||_b^2 = " + format_number(nz.norm_b * nz.norm_b) + " != 6");
}

void criterion_abel_dilate(Checker& chk) {
    DetRng rng(101);
    const SummabilityMethod abel = abel_method();
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const TaylorSeries f = random_poly(rng, 16);
        for (double r : {0.3, 0.7, 0.95}) {
            const PartialSumMean mean = mean_of_partial_sums(abel, f, nullptr, r);
            worst = std::max(worst, coeff_distance(mean.series, dilate(f, r)));
        }
    }
    chk.require(worst <= 1e-10, "worst coefficient deviation " + format_number(worst));
    chk.note("max |P_r[f] - f_r| = " + format_number(worst));
}

void criterion_log_dual_path(Checker& chk) {
    DetRng rng(202);
    const SummabilityMethod log_m = logarithmic_method();
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const TaylorSeries f = random_poly(rng, 32);
        for (double r : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
            const PartialSumMean series_path = mean_of_partial_sums(log_m, f, nullptr, r);
            const LogMeanIntegral quad_path = log_mean_integral(f, r, 1e-10);
            worst = std::max(worst, coeff_distance(series_path.series, quad_path.series));
        }
    }
    chk.require(worst <= 1e-9, "worst dual-path deviation " + format_number(worst));
    chk.note("max coefficient gap " + format_number(worst));
}

void criterion_regularity(Checker& chk) {
    Eigen::VectorXd unit_grid(20);
    for (int k = 1; k <= 20; ++k) unit_grid[k - 1] = 1.0 - std::pow(2.0, -double(k));
    Eigen::VectorXd wide_grid(13);
    for (int k = 0; k <= 12; ++k) wide_grid[k] = std::pow(2.0, double(k));

    auto expect = [&](const SummabilityMethod& m, const Eigen::VectorXd& grid, double r0,
                      bool want) {
        const RegularityReport rep = regularity_report(m, r0, grid, 16);
        chk.require(rep.regular == want,
                    m.name + (want ? " not reported regular" : " wrongly reported regular"));
    };
    expect(abel_method(), unit_grid, 0.5, true);
    for (double alpha : {-0.5, 0.0, 1.0, 2.0}) expect(gen_abel_method(alpha), unit_grid, 0.5, true);
    expect(logarithmic_method(), unit_grid, 0.5, true);
    expect(cesaro_method(), wide_grid, 0.0, true);
    expect(borel_method(1.0, 1.0), wide_grid, 1.0, true);
    expect(constant_row_counterexample(), wide_grid, 0.0, false);
}

void criterion_operator_bound(Checker& chk) {
    DetRng rng(303);
    const HbContext ctx = HbContext::from_pair(halfshift_pair(64));
    Eigen::VectorXd grid(10);
    for (int k = 1; k <= 10; ++k) grid[k - 1] = 1.0 - std::pow(2.0, -double(k));
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 50; ++trial) {
        const TaylorSeries f = random_poly(rng, 16);
        const ScanTable table = scan_divergence(f, ctx, grid, 1e-9);
        for (const ScanRow& row : table.rows) {
            chk.require(row.ok, "row not certified at r=" + format_number(row.r));
            if (row.ok) worst_excess = std::max(worst_excess, row.norm_b - row.bound);
        }
    }
    chk.require(worst_excess <= 1e-8,
                "bound violated by " + format_number(worst_excess));
    chk.note("max norm_b - bound = " + format_number(worst_excess));
}

void criterion_lr_plus_identity(Checker& chk) {
    DetRng rng(404);
    const HbContext ctx = HbContext::from_pair(halfshift_pair(64));
    Eigen::VectorXd grid(10);
    for (int k = 1; k <= 10; ++k) grid[k - 1] = 1.0 - std::pow(2.0, -double(k));
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const TaylorSeries f = random_poly(rng, 16);
        const ScanTable table = scan_divergence(f, ctx, grid, 1e-9);
        for (const ScanRow& row : table.rows) {
            chk.require(row.ok, "row not certified at r=" + format_number(row.r));
            if (row.ok) worst = std::max(worst, row.quad_residual);
        }
    }
    chk.require(worst < 1e-8, "dual-path residual " + format_number(worst));

    // Closed form: f = z, r = 1/2 gives 2 (log 2 - 1/2)/log 2 by both paths.
    const TaylorSeries fz = TaylorSeries::polynomial(
        (Eigen::VectorXcd(2) << Complex(0.0), Complex(1.0)).finished());
    const double expected = 2.0 * (std::log(2.0) - 0.5) / std::log(2.0);
    const PartialSumMean mean = mean_of_partial_sums(logarithmic_method(), fz, &ctx, 0.5);
    const double direct = mean.norm->f_plus.coeff(0).real();
    chk.require(std::abs(direct - expected) < 1e-9,
                "closed-form value missed: " + format_number(direct));
    chk.require(lr_plus_identity_check(fz, ctx, 0.5, 1e-10) < 1e-9,
                "closed-form dual-path residual too large");
    chk.note("max residual " + format_number(worst));
}

void criterion_scalar_inclusion(Checker& chk) {
    const SummabilityMethod abel = abel_method();
    const SummabilityMethod log_m = logarithmic_method();
    const BorweinReport borwein =
        borwein_check([](Index n) { return 1.0 / double(n + 1); }, [](Index) { return 1.0; },
                      lebesgue_moments(), 1.0, 0, 512);
    chk.require(borwein.passed, "Borwein conditions failed");
    chk.require(borwein.max_rel_violation < 1e-10,
                "max relative violation " + format_number(borwein.max_rel_violation));

    ScalarSequence probe;
    probe.at = [](Index n) { return Complex(n % 2 == 0 ? 1.0 : 0.0); };
    probe.growth_C = 1.0;
    probe.growth_R = 1.0;
    Eigen::VectorXd grid(16);
    for (int j = 1; j <= 16; ++j) grid[j - 1] = 1.0 - std::pow(10.0, -0.25 * double(j));
    const InclusionReport rep = empirical_inclusion(abel, log_m, probe, grid, 1e-3);
    chk.require(std::abs(rep.k_limit - Complex(0.5)) < 1e-3,
                "Abel limit " + format_complex(rep.k_limit));
    chk.require(std::abs(rep.h_limit - Complex(0.5)) < 1e-3,
                "logarithmic limit " + format_complex(rep.h_limit));
    chk.note("limits " + format_complex(rep.k_limit) + ", " + format_complex(rep.h_limit));
}

void criterion_growth_rate(Checker& chk) {
    const HbContext ctx = HbContext::from_pair(halfshift_pair(300));
    const TaylorSeries f =
        TaylorSeries::truncation(Eigen::VectorXcd::Ones(257), TailBound{1.0, 1.0});
    const GrowthTable table = sn_growth_table(f, ctx, 256);
    const double base128 = fit_base_over_prefix(table.norms, 128);
    const double base256 = fit_base_over_prefix(table.norms, 256);
    chk.require(std::isfinite(base256) && base256 > 0.0, "fitted base not finite");
    const double rel = std::abs(base256 - base128) / base128;
    chk.require(rel < 0.05, "rate drift " + format_number(rel) + " >= 5%");
    chk.note("R_fit " + format_number(base128) + " -> " + format_number(base256) + " (drift " +
             format_number(rel) + ")");
}

void criterion_scan_smoke(Checker& chk) {
    const HbContext ctx = HbContext::from_pair(halfshift_pair(1100));
    const TaylorSeries f = lacunary_poly(10, true);
    Eigen::VectorXd grid(20);
    for (int k = 1; k <= 20; ++k) grid[k - 1] = 1.0 - std::pow(2.0, -double(k));
    const ScanTable table = scan_divergence(f, ctx, grid, 1e-9);
    chk.require(table.rows.size() == 20, "row count mismatch");
    for (const ScanRow& row : table.rows) {
        chk.require(row.ok, "row failed at r=" + format_number(row.r));
        if (!row.ok) continue;
        chk.require(row.norm_b <= row.bound + 1e-8,
                    "operator bound violated at r=" + format_number(row.r));
        chk.require(row.norm_b >= std::abs(row.fplus0) - 1e-10,
                    "norm below |f+(0)| at r=" + format_number(row.r));
    }
    chk.note("last row norm_b " + format_number(table.rows.back().norm_b));
}

}  // namespace

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    out.push_back(run_criterion(1, "Pythagorean identity (halfshift Fejer-Riesz)", 1.0,
                                criterion_pythagorean));
    out.push_back(run_criterion(2, "exact norms ||1||_b^2 = 2 and ||z||_b^2 = 6", 0.1,
                                criterion_exact_norms));
    out.push_back(
        run_criterion(3, "Abel mean of partial sums equals the dilate", 5.0, criterion_abel_dilate));
    out.push_back(run_criterion(4, "logarithmic mean dual path (series vs quadrature)", 10.0,
                                criterion_log_dual_path));
    out.push_back(run_criterion(5, "regularity verdicts", 5.0, criterion_regularity));
    out.push_back(
        run_criterion(6, "operator bound sqrt(C(phi,r)) ||f||_H2", 30.0, criterion_operator_bound));
    out.push_back(run_criterion(7, "(L_r[f])+(0) identity at z = 0", 30.0,
                                criterion_lr_plus_identity));
    out.push_back(
        run_criterion(8, "scalar inclusion evidence (Abel in logarithmic)", 5.0,
                      criterion_scalar_inclusion));
    out.push_back(run_criterion(9, "partial-sum growth rate stability", 30.0,
                                criterion_growth_rate));
    out.push_back(run_criterion(10, "divergence scan smoke test", 60.0, criterion_scan_smoke));
    return out;
}

int report(std::ostream& os, const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const CriterionResult& r : results) {
        os << "[" << (r.id < 10 ? " " : "") << r.id << "/" << results.size() << "] "
           << (r.passed ? "PASS" : "FAIL") << " (" << r.elapsed_s << " s) " << r.name;
        if (!r.detail.empty()) os << " -- " << r.detail;
        os << "\n";
        if (!r.passed) ++failures;
    }
    os << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
       << "\n";
    return failures;
}

}  // namespace hbsumma::selftest
