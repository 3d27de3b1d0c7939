#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hbsumma/errors.hpp"
#include "hbsumma/fft.hpp"
#include "hbsumma/quadrature.hpp"

using namespace hbsumma;

namespace {

// Naive DFT oracle.
Eigen::VectorXcd dft_oracle(const Eigen::VectorXcd& x) {
    const Index n = x.size();
    Eigen::VectorXcd out(n);
    for (Index k = 0; k < n; ++k) {
        Complex acc(0.0);
        for (Index j = 0; j < n; ++j) {
            const double ang = -2.0 * std::numbers::pi * double(j) * double(k) / double(n);
            acc += x[j] * Complex(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace

TEST_CASE("fft matches the naive DFT") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Index n : {8, 64, 256}) {
        Eigen::VectorXcd x(n);
        for (Index i = 0; i < n; ++i) x[i] = Complex(u(rng), u(rng));
        const Eigen::VectorXcd got = fft(x);
        const Eigen::VectorXcd expect = dft_oracle(x);
        CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("fft of a delta is flat; non-power-of-two rejected") {
    Eigen::VectorXcd delta = Eigen::VectorXcd::Zero(16);
    delta[0] = Complex(1.0);
    const Eigen::VectorXcd spec = fft(delta);
    for (Index k = 0; k < 16; ++k) CHECK(std::abs(spec[k] - Complex(1.0)) < 1e-14);
    CHECK_THROWS_AS(fft(Eigen::VectorXcd(Eigen::VectorXcd::Zero(12))), std::invalid_argument);
}

TEST_CASE("adaptive simpson: closed-form integrals") {
    const auto s = adaptive_simpson([](double t) { return std::sin(t); }, 0.0, std::numbers::pi,
                                    1e-12);
    CHECK(std::abs(s.value - 2.0) < 1e-11);
    CHECK(s.error_estimate < 1e-11);

    const auto m = adaptive_simpson([](double t) { return t * t * t; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(m.value - 0.25) < 1e-13);

    // log(1/(1-t)) derivative integral, the shape used by the logarithmic mean.
    const double r = 0.75;
    const auto l = adaptive_simpson([](double t) { return 1.0 / (1.0 - t); }, 0.0, r, 1e-12);
    CHECK(std::abs(l.value - std::log(1.0 / (1.0 - r))) < 1e-11);
}

TEST_CASE("adaptive simpson handles vector-valued integrands") {
    auto f = [](double t) {
        Eigen::VectorXcd v(3);
        v << Complex(1.0), Complex(2.0 * t), Complex(3.0 * t * t);
        return v;
    };
    const auto res = adaptive_simpson(f, 0.0, 1.0, 1e-12);
    for (Index k = 0; k < 3; ++k) CHECK(std::abs(res.value[k] - Complex(1.0)) < 1e-12);
}

TEST_CASE("adaptive simpson respects the interval cap") {
    auto nasty = [](double t) { return std::sin(1.0 / (t + 1e-6)); };
    CHECK_THROWS_AS(adaptive_simpson(nasty, 0.0, 1.0, 1e-14, 64), certification_error);
}
