#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hbsumma/errors.hpp"
#include "hbsumma/hb.hpp"

using namespace hbsumma;

namespace {

TaylorSeries poly(std::initializer_list<Complex> cs) {
    Eigen::VectorXcd v(Index(cs.size()));
    Index i = 0;
    for (Complex c : cs) v[i++] = c;
    return TaylorSeries::polynomial(std::move(v));
}

TaylorSeries random_poly(std::mt19937_64& rng, Index deg) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXcd v(deg + 1);
    for (Index i = 0; i <= deg; ++i) v[i] = Complex(u(rng), u(rng));
    return TaylorSeries::polynomial(std::move(v));
}

HbContext preset(Index order = 64) { return HbContext::from_pair(halfshift_pair(order)); }

HbContext zero_symbol_ctx() { return HbContext{TaylorSeries::zero(), 1e-10}; }

}  // namespace

TEST_CASE("f_plus: hand-evaluated halfshift values") {
    const HbContext ctx = preset();

    const TaylorSeries one_plus = f_plus(poly({1.0}), ctx);
    CHECK(one_plus.degree() == 0);
    CHECK(one_plus.coeff(0) == Complex(1.0));  // a_0 conj(c_0)

    const TaylorSeries z_plus = f_plus(poly({0.0, 1.0}), ctx);
    CHECK(z_plus.coeff(0) == Complex(2.0));  // a_1 conj(c_1)
    CHECK(z_plus.coeff(1) == Complex(1.0));  // a_1 conj(c_0)

    const TaylorSeries zero_plus = f_plus(poly({3.0, -2.0}), zero_symbol_ctx());
    CHECK(zero_plus.coeff(0) == Complex(0.0));
    CHECK(zero_plus.coeff(1) == Complex(0.0));
}

TEST_CASE("f_plus requires enough phi coefficients") {
    const HbContext small = preset(2);
    CHECK_THROWS_WITH_AS(f_plus(poly({1.0, 1.0, 1.0, 1.0}), small), "phi order too small",
                         std::invalid_argument);
    CHECK_THROWS_AS(f_plus(TaylorSeries::truncation(Eigen::VectorXcd::Ones(2)), preset()),
                    std::invalid_argument);
}

TEST_CASE("hb_norm: exact halfshift values and the zero-symbol degenerate cases") {
    const HbContext ctx = preset();
    const HbVector n1 = hb_norm(poly({1.0}), ctx);
    CHECK(n1.norm_b * n1.norm_b == doctest::Approx(2.0).epsilon(1e-15));
    const HbVector nz = hb_norm(poly({0.0, 1.0}), ctx);
    CHECK(nz.norm_b * nz.norm_b == doctest::Approx(6.0).epsilon(1e-15));

    std::mt19937_64 rng(31);
    const TaylorSeries f = random_poly(rng, 9);
    const HbVector h = hb_norm(f, zero_symbol_ctx());
    CHECK(h.norm_b == doctest::Approx(h2_norm(f)).epsilon(1e-15));

    const HbVector z = hb_norm(poly({0.0}), ctx);
    CHECK(z.norm_b == 0.0);
}

TEST_CASE("hb_norm invariants on random polynomials") {
    std::mt19937_64 rng(32);
    const HbContext ctx = preset();
    for (int trial = 0; trial < 25; ++trial) {
        const TaylorSeries f = random_poly(rng, 12);
        const TaylorSeries g = random_poly(rng, 12);
        const HbVector hf = hb_norm(f, ctx);
        const HbVector hg = hb_norm(g, ctx);

        CHECK(hf.norm_b >= hf.h2_part);  // norm dominates the H2 part
        CHECK(std::abs(hf.norm_b * hf.norm_b - (hf.h2_part * hf.h2_part +
                                                hf.plus_part * hf.plus_part)) <=
              1e-12 * std::max(1.0, hf.norm_b * hf.norm_b));

        // absolute homogeneity
        const Complex lambda(0.7, -1.3);
        const HbVector hl = hb_norm(TaylorSeries::polynomial(lambda * f.coeffs()), ctx);
        CHECK(hl.norm_b == doctest::Approx(std::abs(lambda) * hf.norm_b).epsilon(1e-12));

        // triangle inequality
        Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(13);
        sum.head(f.degree() + 1) += f.coeffs();
        sum.head(g.degree() + 1) += g.coeffs();
        const HbVector hs = hb_norm(TaylorSeries::polynomial(sum), ctx);
        CHECK(hs.norm_b <= hf.norm_b + hg.norm_b + 1e-10);
    }
}

TEST_CASE("dilate bound: corollary-style estimate holds with the computed constant") {
    std::mt19937_64 rng(33);
    const HbContext ctx = preset();
    for (int trial = 0; trial < 20; ++trial) {
        const TaylorSeries f = random_poly(rng, 10);
        const double h2 = h2_norm(f);
        for (double r : {0.0, 0.25, 0.5, 0.75, 0.9}) {
            const double c = dilate_bound_constant(ctx, r).value;
            const double lhs = hb_norm(dilate(f, r), ctx).norm_b;
            CHECK(lhs * lhs <= c * h2 * h2 + 1e-10);
        }
    }
}

TEST_CASE("dilate bound constant: hand values and monotonicity") {
    const HbContext ctx = preset(512);
    CHECK(dilate_bound_constant(ctx, 0.0).value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(dilate_bound_constant(zero_symbol_ctx(), 0.37).value == 1.0);
    // preset phi at r = 1/2: 1 + (1 + 4 r/(1-r)) / (1-r) = 11
    CHECK(dilate_bound_constant(ctx, 0.5).value == doctest::Approx(11.0).epsilon(1e-12));
    CHECK(dilate_bound_constant(ctx, 0.5).tail_err < 1e-12);

    double prev = 0.0;
    for (double r : {0.0, 0.1, 0.2, 0.4, 0.6, 0.8, 0.95}) {
        const double c = dilate_bound_constant(ctx, r).value;
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("f_plus_at_zero_dilated: hand values and the exact cross-path identity") {
    const HbContext ctx = preset();
    const TaylorSeries fz = poly({0.0, 1.0});

    CHECK(f_plus_at_zero_dilated(fz, ctx, 0.0).value == Complex(0.0));  // only j=0 survives
    const TaylorSeries fc = poly({Complex(0.3, 0.4)});
    CHECK(f_plus_at_zero_dilated(fc, ctx, 0.0).value ==
          Complex(0.3, 0.4) * std::conj(Complex(1.0)));

    const auto at_half = f_plus_at_zero_dilated(fz, ctx, 0.5);
    CHECK(at_half.value == Complex(1.0));  // 1 * 0.5 * conj(2)
    CHECK(at_half.tail_err == 0.0);

    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 20; ++trial) {
        const TaylorSeries f = random_poly(rng, 14);
        for (double r : {0.0, 0.3, 0.8, 0.99}) {
            const Complex direct = f_plus_at_zero_dilated(f, ctx, r).value;
            const Complex via_fplus = f_plus(dilate(f, r), ctx).coeff(0);
            CHECK(direct == via_fplus);  // bit-identical arithmetic on both paths
        }
    }
}

TEST_CASE("f_plus_at_zero_dilated certifies truncation tails") {
    HbContext ctx = preset(64);
    ctx.tol = 1e-4;
    const TaylorSeries t =
        TaylorSeries::truncation(Eigen::VectorXcd::Ones(20), TailBound{1.0, 1.0});
    // r R_f R_phi = 0.5 < 1: certified, tail tiny at r = 0.5
    const auto res = f_plus_at_zero_dilated(t, ctx, 0.5);
    CHECK(res.tail_err > 0.0);
    CHECK(res.tail_err < 1e-4);
    // the tolerance gate refuses what it cannot certify below ctx.tol
    HbContext tight = preset(64);
    tight.tol = 1e-12;
    CHECK_THROWS_AS(f_plus_at_zero_dilated(t, tight, 0.5), certification_error);
    // bound-free truncations cannot be certified
    const TaylorSeries free = TaylorSeries::truncation(Eigen::VectorXcd::Ones(4));
    CHECK_THROWS_AS(f_plus_at_zero_dilated(free, ctx, 0.5), certification_error);
}

TEST_CASE("hb_norm of a certified truncation brackets the exact extension") {
    const HbContext ctx = preset(128);
    // Stored: ones through degree 16; true extension decays like 0.5^n.
    Eigen::VectorXcd full(41);
    for (Index n = 0; n <= 40; ++n) full[n] = n <= 16 ? 1.0 : std::pow(0.5, double(n));
    const HbVector exact = hb_norm(TaylorSeries::polynomial(full), ctx);

    const TaylorSeries trunc =
        TaylorSeries::truncation(full.head(17), TailBound{1.0, 0.5});
    const HbVector approx = hb_norm(trunc, ctx);
    CHECK(approx.tail_err > 0.0);
    CHECK(std::abs(exact.norm_b - approx.norm_b) <= approx.tail_err + 1e-12);

    CHECK_THROWS_AS(hb_norm(TaylorSeries::truncation(full.head(17)), ctx),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        hb_norm(TaylorSeries::truncation(full.head(17), TailBound{1.0, 1.0}), ctx),
        certification_error);
}

TEST_CASE("sn growth table: stabilization for polynomials") {
    const HbContext ctx = preset(80);
    std::mt19937_64 rng(35);
    const TaylorSeries f = random_poly(rng, 5);
    const GrowthTable table = sn_growth_table(f, ctx, 64);
    const double full = hb_norm(f, ctx).norm_b;
    for (Index n = 5; n <= 64; ++n)
        CHECK(table.norms[std::size_t(n)] == doctest::Approx(full).epsilon(1e-14));
    // bounded empirical rate once the data has stabilized
    CHECK(table.fitted_rate <= std::log(1.1));
    CHECK(std::isfinite(table.fitted_base));
}

TEST_CASE("sn growth table: monotone for nonnegative-coefficient truncations") {
    const HbContext ctx = preset(80);
    const TaylorSeries ones =
        TaylorSeries::truncation(Eigen::VectorXcd::Ones(65), TailBound{1.0, 1.0});
    const GrowthTable table = sn_growth_table(ones, ctx, 64);
    for (std::size_t n = 1; n < table.norms.size(); ++n)
        CHECK(table.norms[n] >= table.norms[n - 1] - 1e-12);
}

TEST_CASE("sn growth table input validation") {
    const HbContext ctx = preset(8);
    std::mt19937_64 rng(36);
    CHECK_THROWS_AS(sn_growth_table(random_poly(rng, 16), ctx, 16), std::invalid_argument);
    const TaylorSeries shallow = TaylorSeries::truncation(Eigen::VectorXcd::Ones(4));
    CHECK_THROWS_AS(sn_growth_table(shallow, ctx, 8), std::invalid_argument);
}
