#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hbsumma/errors.hpp"
#include "hbsumma/series.hpp"

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

// Forward-scatter convolution, independent of the gather loop in the library.
Eigen::VectorXcd convolve_oracle(const Eigen::VectorXcd& p, const Eigen::VectorXcd& q) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(p.size() + q.size() - 1);
    for (Index i = 0; i < p.size(); ++i)
        for (Index j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    return out;
}

double coeff_distance(const TaylorSeries& a, const TaylorSeries& b) {
    double d = 0.0;
    for (Index n = 0; n <= std::max(a.degree(), b.degree()); ++n)
        d = std::max(d, std::abs(a.coeff(n) - b.coeff(n)));
    return d;
}

}  // namespace

TEST_CASE("cauchy product: difference of squares and identity") {
    const TaylorSeries r = cauchy_product(poly({1.0, 1.0}), poly({1.0, -1.0}));
    CHECK(r.degree() == 2);
    CHECK(r.coeff(0) == Complex(1.0));
    CHECK(r.coeff(1) == Complex(0.0));
    CHECK(r.coeff(2) == Complex(-1.0));
    CHECK(r.is_exact());

    const TaylorSeries p = poly({2.0, Complex(0.0, 3.0), -1.0});
    const TaylorSeries one_p = cauchy_product(poly({1.0}), p);
    CHECK(coeff_distance(one_p, p) == 0.0);
}

TEST_CASE("cauchy product matches the double-sum oracle") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const TaylorSeries p = random_poly(rng, 5), q = random_poly(rng, 5);
        const Eigen::VectorXcd expect = convolve_oracle(p.coeffs(), q.coeffs());
        const TaylorSeries got = cauchy_product(p, q);
        REQUIRE(got.degree() == expect.size() - 1);
        for (Index n = 0; n < expect.size(); ++n)
            CHECK(std::abs(got.coeff(n) - expect[n]) < 1e-14);
    }
}

TEST_CASE("cauchy product is commutative and associative on exact inputs") {
    std::mt19937_64 rng(8);
    const TaylorSeries p = random_poly(rng, 4), q = random_poly(rng, 6), s = random_poly(rng, 3);
    CHECK(coeff_distance(cauchy_product(p, q), cauchy_product(q, p)) < 1e-14);
    CHECK(coeff_distance(cauchy_product(cauchy_product(p, q), s),
                         cauchy_product(p, cauchy_product(q, s))) < 1e-13);
}

TEST_CASE("cauchy product truncates at an inexact factor's stored range") {
    const TaylorSeries trunc = TaylorSeries::truncation(Eigen::VectorXcd::Ones(3));
    const TaylorSeries p = poly({1.0, 1.0, 1.0, 1.0});
    const TaylorSeries r = cauchy_product(trunc, p);
    CHECK(r.degree() == 2);
    CHECK_FALSE(r.is_exact());
}

TEST_CASE("divide: long-division oracle values") {
    const TaylorSeries q = divide(poly({1.0, 1.0}), poly({1.0, -1.0}), 3);
    CHECK(q.degree() == 3);
    CHECK(std::abs(q.coeff(0) - Complex(1.0)) == 0.0);
    CHECK(std::abs(q.coeff(1) - Complex(2.0)) == 0.0);
    CHECK(std::abs(q.coeff(2) - Complex(2.0)) == 0.0);
    CHECK(std::abs(q.coeff(3) - Complex(2.0)) == 0.0);
}

TEST_CASE("divide: self-division gives one") {
    std::mt19937_64 rng(9);
    TaylorSeries p = random_poly(rng, 6);
    while (std::abs(p.coeff(0)) < 0.1) p = random_poly(rng, 6);
    const TaylorSeries q = divide(p, p, 4);
    CHECK(std::abs(q.coeff(0) - Complex(1.0)) < 1e-14);
    for (Index n = 1; n <= 4; ++n) CHECK(std::abs(q.coeff(n)) < 1e-13);
}

TEST_CASE("divide then multiply back reproduces the numerator") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int trial = 0; trial < 20; ++trial) {
        const TaylorSeries num = random_poly(rng, 6);
        // unit constant term, contractive higher coefficients: the quotient
        // stays O(1) and the residual target is absolute
        Eigen::VectorXcd d(6);
        d[0] = Complex(1.0);
        for (Index i = 1; i < 6; ++i) d[i] = Complex(u(rng), u(rng));
        const TaylorSeries den = TaylorSeries::polynomial(std::move(d));
        const TaylorSeries q = divide(num, den, 8);
        const TaylorSeries back = cauchy_product(q, den);
        for (Index n = 0; n <= 8; ++n)
            CHECK(std::abs(back.coeff(n) - num.coeff(n)) < 1e-12);
    }
    // ill-conditioned denominators still satisfy a relative residual bound
    for (int trial = 0; trial < 10; ++trial) {
        TaylorSeries num = random_poly(rng, 6), den = random_poly(rng, 5);
        while (std::abs(den.coeff(0)) < 0.3) den = random_poly(rng, 5);
        const TaylorSeries q = divide(num, den, 8);
        const TaylorSeries back = cauchy_product(q, den);
        const double scale = q.coeffs().cwiseAbs().maxCoeff() + 1.0;
        for (Index n = 0; n <= 8; ++n)
            CHECK(std::abs(back.coeff(n) - num.coeff(n)) < 1e-13 * scale);
    }
}

TEST_CASE("divide rejects a zero constant term") {
    CHECK_THROWS_WITH_AS(divide(poly({1.0}), poly({0.0, 1.0}), 3), "non-invertible series",
                         std::invalid_argument);
}

TEST_CASE("partial sums: truncation, stabilization, evaluation") {
    const TaylorSeries f = poly({1.0, 2.0, 3.0});
    const TaylorSeries s1 = partial_sum(f, 1);
    CHECK(s1.degree() == 1);
    CHECK(s1.coeff(0) == Complex(1.0));
    CHECK(s1.coeff(1) == Complex(2.0));

    CHECK(coeff_distance(partial_sum(f, 7), f) == 0.0);  // stabilizes at f

    const TaylorSeries g = poly({1.0, 1.0, 1.0, 1.0});
    const Complex z(0.3, 0.0);
    const Complex direct = 1.0 + z * (1.0 + z * (1.0 + z));
    CHECK(std::abs(evaluate(partial_sum(g, 3), z).value - direct) < 1e-15);
}

TEST_CASE("partial sum beyond a truncation errors") {
    const TaylorSeries t = TaylorSeries::truncation(Eigen::VectorXcd::Ones(4));
    CHECK_NOTHROW(partial_sum(t, 2));
    CHECK_THROWS_AS(partial_sum(t, 5), std::invalid_argument);
}

TEST_CASE("dilate endpoints and composition") {
    std::mt19937_64 rng(11);
    const TaylorSeries f = random_poly(rng, 8);

    const TaylorSeries at0 = dilate(f, 0.0);
    CHECK(at0.coeff(0) == f.coeff(0));
    for (Index n = 1; n <= 8; ++n) CHECK(at0.coeff(n) == Complex(0.0));

    CHECK(coeff_distance(dilate(f, 1.0), f) == 0.0);

    const TaylorSeries ab = dilate(dilate(f, 0.8), 0.5);
    const TaylorSeries ba = dilate(f, 0.4);
    CHECK(coeff_distance(ab, ba) < 1e-15);

    CHECK(h2_norm(dilate(f, 0.37)) <= h2_norm(f));
}

TEST_CASE("dilate realizes the Abel mean of partial sums") {
    // f_r = (1 - r) sum_n s_n[f] r^n, checked at finite N with a geometric tail.
    std::mt19937_64 rng(12);
    const TaylorSeries f = random_poly(rng, 6);
    const double r = 0.6;
    const int n_top = 80;  // r^(N+1) ~ 2e-18
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(f.degree() + 1);
    double rn = 1.0;
    for (int n = 0; n <= n_top; ++n) {
        const TaylorSeries sn = partial_sum(f, n);
        for (Index k = 0; k <= sn.degree(); ++k) acc[k] += rn * sn.coeff(k);
        rn *= r;
    }
    acc *= (1.0 - r);
    CHECK(coeff_distance(TaylorSeries::polynomial(acc), dilate(f, r)) < 1e-12);
}

TEST_CASE("dilate scales a tail bound") {
    const TaylorSeries t =
        TaylorSeries::truncation(Eigen::VectorXcd::Ones(4), TailBound{2.0, 0.9});
    const TaylorSeries d = dilate(t, 0.5);
    REQUIRE(d.tail_bound().has_value());
    CHECK(d.tail_bound()->C == 2.0);
    CHECK(d.tail_bound()->R == doctest::Approx(0.45).epsilon(1e-15));
}

TEST_CASE("evaluate: polynomials anywhere, truncations with certified tails") {
    const TaylorSeries f = poly({1.0, 1.0, 1.0});
    CHECK(evaluate(f, Complex(0.0)).value == Complex(1.0));
    CHECK(evaluate(f, Complex(1.0)).value == Complex(3.0));
    CHECK(evaluate(f, Complex(0.0)).tail_error == 0.0);

    // Geometric truncation: 33 ones with |a_n| <= 1.
    const TaylorSeries g =
        TaylorSeries::truncation(Eigen::VectorXcd::Ones(33), TailBound{1.0, 1.0});
    const EvalResult res = evaluate(g, Complex(0.5));
    CHECK(std::abs(res.value - (2.0 - std::ldexp(1.0, -32))) < 1e-15);
    CHECK(res.tail_error == doctest::Approx(std::ldexp(1.0, -32)).epsilon(1e-12));

    CHECK_THROWS_AS(evaluate(g, Complex(1.1)), certification_error);
    const TaylorSeries unbounded = TaylorSeries::truncation(Eigen::VectorXcd::Ones(4));
    CHECK(std::isinf(evaluate(unbounded, Complex(0.5)).tail_error));
    CHECK_THROWS_AS(evaluate(unbounded, Complex(1.0)), certification_error);
}

TEST_CASE("h2 norm: hand values and brute force") {
    CHECK(h2_norm(poly({0.0})) == 0.0);
    CHECK(h2_norm(poly({3.0, 4.0})) == doctest::Approx(5.0).epsilon(1e-15));

    std::mt19937_64 rng(13);
    const TaylorSeries f = random_poly(rng, 10);
    double acc = 0.0;
    for (Index n = 0; n <= 10; ++n) acc += std::norm(f.coeff(n));
    CHECK(h2_norm(f) == doctest::Approx(std::sqrt(acc)).epsilon(1e-15));

    const TaylorSeries t =
        TaylorSeries::truncation(f.coeffs(), TailBound{1.0, 0.5});
    CHECK(h2_norm_upper(t) >= h2_norm(t));
    CHECK(std::isfinite(h2_norm_upper(t)));
    const TaylorSeries t1 = TaylorSeries::truncation(f.coeffs(), TailBound{1.0, 1.0});
    CHECK(std::isinf(h2_norm_upper(t1)));
}

TEST_CASE("degree cap is an error, not silent truncation") {
    CHECK_NOTHROW(TaylorSeries::polynomial(Eigen::VectorXcd::Zero(4096)));
    CHECK_THROWS_AS(TaylorSeries::polynomial(Eigen::VectorXcd::Zero(4097)),
                    std::invalid_argument);
    const TaylorSeries big = TaylorSeries::polynomial(Eigen::VectorXcd::Ones(3000));
    CHECK_THROWS_AS(cauchy_product(big, big), std::invalid_argument);
}
