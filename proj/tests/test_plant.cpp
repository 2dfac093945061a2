#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ozf/errors.hpp"
#include "ozf/plant.hpp"
#include "test_util.hpp"

using namespace ozf;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("plant") {

TEST_CASE("frequency response") {
    const RationalPlant delay = RationalPlant::delay();
    const auto r = delay.frequency_response(kPi / 2.0);
    CHECK(r.real() == doctest::Approx(0.0).scale(1.0));
    CHECK(r.imag() == doctest::Approx(-1.0));

    const RationalPlant gain = RationalPlant::constant(-0.5);
    for (double w : {0.0, 1.0, 2.5}) CHECK(gain.frequency_response(w).real() == -0.5);

    const RationalPlant one_pole({1.0}, {1.0, -0.5});
    CHECK(one_pole.frequency_response(0.0).real() == doctest::Approx(2.0));
}

TEST_CASE("impulse response") {
    CHECK(RationalPlant::delay().impulse_response(3) == std::vector<double>{0.0, 1.0, 0.0});
    const RationalPlant one_pole({1.0}, {1.0, -0.5});
    CHECK(one_pole.impulse_response(4) == std::vector<double>{1.0, 0.5, 0.25, 0.125});
    CHECK(RationalPlant::constant(-0.5).impulse_response(2) == std::vector<double>{-0.5, 0.0});
}

TEST_CASE("frequency response rejects unit-circle denominator zeros") {
    const RationalPlant marginal({1.0}, {1.0, -1.0});  // pole at z = 1
    CHECK_THROWS_AS(marginal.frequency_response(0.0), Error);
}

TEST_CASE("stability by winding") {
    CHECK(RationalPlant({1.0}, {1.0, -0.5}).is_stable());
    CHECK_FALSE(RationalPlant({1.0}, {1.0, -2.0}).is_stable());
    CHECK(RationalPlant({1.0}, {1.0, 0.0, 0.81}).is_stable());   // poles at +-0.9j
    CHECK_FALSE(RationalPlant({1.0}, {1.0, 0.0, 1.21}).is_stable());
    CHECK(RationalPlant::constant(3.0).is_stable());
    CHECK_THROWS_AS(RationalPlant({1.0}, {1.0, -1.0}).is_stable(), InconclusiveWinding);
}

TEST_CASE("toeplitz truncation") {
    const auto t1 = toeplitz_truncation(RationalPlant::constant(-0.5), 2);
    CHECK(t1.entries(0, 0) == -0.5);
    CHECK(t1.entries(1, 1) == -0.5);
    CHECK(t1.entries(1, 0) == 0.0);

    const auto t2 = toeplitz_truncation(RationalPlant::delay(), 3);
    CHECK(t2.entries(1, 0) == 1.0);
    CHECK(t2.entries(2, 1) == 1.0);
    CHECK(t2.entries(0, 0) == 0.0);

    const auto t3 = toeplitz_truncation(RationalPlant({1.0}, {1.0, -0.5}), 2);
    CHECK(t3.entries(0, 0) == 1.0);
    CHECK(t3.entries(1, 0) == 0.5);
    CHECK(t3.entries(1, 1) == 1.0);
}

TEST_CASE("apply") {
    CHECK(apply(RationalPlant::delay(), Signal::impulse(0), 3) == Signal::impulse(1));
    CHECK(apply(RationalPlant::constant(-0.5), Signal(0, {2.0, 4.0}), 2) ==
          Signal(0, {-1.0, -2.0}));
    CHECK(apply(RationalPlant({1.0}, {1.0, -0.5}), Signal::impulse(0), 3) ==
          Signal(0, {1.0, 0.5, 0.25}));
    CHECK_THROWS_AS(apply(RationalPlant::delay(), Signal::impulse(-1), 3), std::invalid_argument);
}

TEST_CASE("time invariance: apply commutes with shift") {
    std::mt19937_64 rng(3);
    const RationalPlant g({0.3, -0.2}, {1.0, -0.6, 0.1});
    for (int rep = 0; rep < 20; ++rep) {
        const Signal u = testutil::random_signal(rng, 0, 4, 6);
        const std::int64_t tau = 1 + rep % 4;
        const std::size_t horizon = 24;
        const Signal lhs = apply(g, shift(u, tau), horizon);
        const Signal rhs = shift(apply(g, u, horizon - static_cast<std::size_t>(tau)), tau);
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(horizon); ++k)
            CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("frequency response matches the DFT of a long impulse response") {
    const RationalPlant g({0.5, 0.2}, {1.0, -0.9, 0.2});
    REQUIRE(g.is_stable());
    const std::size_t n = 4096;
    const auto h = g.impulse_response(n);
    for (std::size_t m : {std::size_t{0}, std::size_t{7}, std::size_t{100}, std::size_t{2048}}) {
        const double w = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
        std::complex<double> dft = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            dft += h[k] * std::polar(1.0, -w * static_cast<double>(k));
        const auto fr = g.frequency_response(w);
        CHECK(std::abs(fr - dft) < 1e-6);
    }
}

TEST_CASE("toeplitz truncation reproduces apply") {
    std::mt19937_64 rng(8);
    const RationalPlant g({1.0, 0.4}, {1.0, -0.3});
    for (int rep = 0; rep < 10; ++rep) {
        Signal u = testutil::random_signal(rng, 0, 0, 8);
        const std::size_t h = 12;
        const auto t = toeplitz_truncation(g, h);
        std::vector<double> uv(h, 0.0);
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(h); ++k) uv[k] = u[k];
        const std::vector<double> y = t.entries * uv;
        const Signal ya = apply(g, u, h);
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(h); ++k)
            CHECK(y[static_cast<std::size_t>(k)] ==
                  doctest::Approx(ya[k]).epsilon(1e-12).scale(1.0));
    }
}

}  // TEST_SUITE
