#include <random>

#include "doctest.h"
#include "ozf/errors.hpp"
#include "ozf/nonlinearity.hpp"
#include "test_util.hpp"

using namespace ozf;

TEST_SUITE("nonlinearity") {

TEST_CASE("evaluate") {
    const PiecewiseLinearMonotone n({{0.0, 0.0}, {1.0, 1.0}});
    CHECK(n(0.5) == doctest::Approx(0.5));
    CHECK(n(0.0) == 0.0);

    const PiecewiseLinearMonotone m({{0.0, 0.0}, {1.0, 1.0}, {2.0, 4.0}});
    CHECK(m(1.5) == doctest::Approx(2.5));
    CHECK(m(1.0) == 1.0);  // exact at breakpoints
    CHECK(m(5.0) == 4.0);  // flat extension
    CHECK(m(-3.0) == 0.0);

    CHECK_THROWS_AS(PiecewiseLinearMonotone({{0.0, 0.0}, {1.0, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseLinearMonotone({{1.0, 1.0}, {2.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseLinearMonotone({{0.0, 0.0}}, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("slope bound") {
    const PiecewiseLinearMonotone m({{0.0, 0.0}, {1.0, 1.0}, {2.0, 4.0}}, 0.5, 0.0);
    CHECK(m.slope_bound() == doctest::Approx(3.0));
    CHECK(PiecewiseLinearMonotone::linear(2.0).slope_bound() == doctest::Approx(2.0));
    // |N(x)| <= C |x| spot check.
    for (double x : {-3.0, -0.7, 0.2, 1.4, 9.0})
        CHECK(std::abs(m(x)) <= m.slope_bound() * std::abs(x) + 1e-12);
}

TEST_CASE("lift") {
    const Signal v(0, {1.0, -1.0});
    CHECK(lift(PiecewiseLinearMonotone::linear(1.0), v) == v);
    CHECK(lift(PiecewiseLinearMonotone::zero(), v).is_zero());
    CHECK(lift(PiecewiseLinearMonotone::linear(2.0), v) == Signal(0, {2.0, -2.0}));
}

TEST_CASE("lift commutes with shift") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 30; ++rep) {
        const auto n = random_monotone(200 + static_cast<std::uint64_t>(rep));
        const Signal v = testutil::random_signal(rng, -5, 5, 7);
        const std::int64_t tau = (rep % 9) - 4;
        CHECK(lift(n, shift(v, tau)) == shift(lift(n, v), tau));
    }
}

TEST_CASE("interpolate_monotone on clean data") {
    const SequencePair p{Signal(0, {1.0, 2.0}), Signal(0, {1.0, 4.0})};
    const auto r = interpolate_monotone(p, 1e-2);
    CHECK(r.v_hat == p.v);
    CHECK(r.w_hat == p.w);
    CHECK(r.function(1.0) == 1.0);
    CHECK(r.function(2.0) == 4.0);
    CHECK(r.function(0.0) == 0.0);
    CHECK(lift(r.function, r.v_hat) == r.w_hat);
}

TEST_CASE("interpolate_monotone perturbs repeated values") {
    const SequencePair p{Signal(0, {1.0, 1.0}), Signal(0, {1.0, 2.0})};
    const auto r = interpolate_monotone(p, 0.01);
    CHECK(r.v_hat == Signal(0, {1.0, 1.01}));
    CHECK(r.function(1.0) == 1.0);
    CHECK(r.function(1.01) == 2.0);
    CHECK(lift(r.function, r.v_hat) == r.w_hat);
}

TEST_CASE("interpolate_monotone zero-value rule") {
    const SequencePair p{Signal::zero(), Signal(0, {3.0})};
    const auto r = interpolate_monotone(p, 0.1);
    REQUIRE(r.v_hat.size() == 1);
    CHECK(r.v_hat.values()[0] == doctest::Approx(0.3));
    CHECK(r.function(r.v_hat.values()[0]) == 3.0);
    CHECK(lift(r.function, r.v_hat) == r.w_hat);
}

TEST_CASE("interpolate_monotone rejects disordered input and oversized delta") {
    CHECK_THROWS_AS(
        interpolate_monotone({Signal(0, {1.0, 2.0}), Signal(0, {4.0, 1.0})}, 1e-2),
        NotSimilarlyOrdered);
    // Perturbation of the v=1 group reaches past the sample at v=1.005.
    const SequencePair tight{Signal(0, {1.0, 1.0, 1.005}), Signal(0, {0.0, 1.0, 2.0})};
    CHECK_THROWS_AS(interpolate_monotone(tight, 0.1), DeltaTooLarge);
    CHECK_NOTHROW(interpolate_monotone(tight, 1e-4));
}

TEST_CASE("interpolate_monotone with a window truncates first") {
    const SequencePair p{Signal(-3, {-2.0, 0.0, 0.0, 1.0, 1.0, 0.0, 3.0}),
                         Signal(-3, {-1.0, 0.0, 0.0, 0.5, 0.8, 0.0, 2.0})};
    REQUIRE(is_similarly_ordered(p));
    const auto r = interpolate_monotone(p, 1e-3, std::int64_t{2});
    // Samples outside [-2, 2] are dropped before interpolation.
    CHECK(r.w_hat == truncate_window(p.w, -2, 2));
    CHECK(r.v_hat.start() >= -2);
    CHECK(r.v_hat.end() <= 3);
    CHECK(lift(r.function, r.v_hat) == r.w_hat);
    // The window leaves a truncation residue against the full pair.
    double err_sq = 0.0;
    for (std::int64_t k = p.v.start(); k < p.v.end(); ++k) {
        const double d = p.v[k] - r.v_hat[k];
        err_sq += d * d;
    }
    const double truncated_mass =
        std::sqrt(p.v.norm_sq() - truncate_window(p.v, -2, 2).norm_sq());
    CHECK(std::sqrt(err_sq) <= 1e-3 * p.w.norm() + truncated_mass + 1e-12);
}

TEST_CASE("interpolation error shrinks like delta") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        // Build a similarly ordered pair with repeats: levels -1, 0, 2.
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> v, w;
        for (int i = 0; i < 3; ++i) {
            v.push_back(-1.0);
            w.push_back(-2.0 + u(rng));  // in [-2, -1]
        }
        v.push_back(0.0);
        w.push_back(-0.5 * u(rng));
        for (int i = 0; i < 3; ++i) {
            v.push_back(2.0);
            w.push_back(1.0 + u(rng));
        }
        const SequencePair p{Signal(0, v), Signal(0, w)};
        REQUIRE(is_similarly_ordered(p));

        double prev = std::numeric_limits<double>::infinity();
        for (const double delta : {1e-1, 1e-2, 1e-3}) {
            const auto r = interpolate_monotone(p, delta);
            CHECK(lift(r.function, r.v_hat) == r.w_hat);
            double err_sq = 0.0;
            for (std::int64_t k = 0; k < static_cast<std::int64_t>(v.size()); ++k) {
                const double d = p.v[k] - r.v_hat[k];
                err_sq += d * d;
            }
            const double err = std::sqrt(err_sq);
            CHECK(err <= delta * p.w.norm() + 1e-12);
            CHECK(err <= prev + 1e-15);
            prev = err;
        }
    }
}

TEST_CASE("sector evaluation") {
    const SectorNonlinearity zero = SectorNonlinearity::zero();
    CHECK(zero.evaluate(1.5, 0) == 0.0);

    // relu-like: zero on the left half line.
    const SectorNonlinearity relu =
        SectorNonlinearity::time_invariant({{{0.0, 0.0}, {1.0, 1.0}}, 0.0, 1.0});
    CHECK(relu.evaluate(-2.0, 5) == 0.0);
    CHECK(relu.evaluate(2.0, 5) == doctest::Approx(2.0));
    CHECK(relu.evaluate(0.0, 5) == 0.0);

    // Two-phase: identity on even steps, zero on odd.
    const SectorNonlinearity alt({{{{-1.0, -1.0}, {0.0, 0.0}, {1.0, 1.0}}, 1.0, 1.0},
                                  {{{0.0, 0.0}}, 0.0, 0.0}});
    CHECK(alt.period() == 2);
    CHECK(alt.evaluate(2.0, 3) == 0.0);
    CHECK(alt.evaluate(2.0, 4) == doctest::Approx(2.0));
    CHECK(alt.evaluate(2.0, -2) == doctest::Approx(2.0));

    CHECK_THROWS_AS(SectorNonlinearity::time_invariant({{{-1.0, 1.0}, {0.0, 0.0}}, 0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SectorNonlinearity::time_invariant({{{0.0, 0.0}, {1.0, 1.0}}, 0.0, -0.5}),
                    std::invalid_argument);
}

TEST_CASE("sector sign property under random probes") {
    const SectorNonlinearity psi({{{{-2.0, -0.5}, {0.0, 0.0}, {1.0, 3.0}, {2.0, 1.0}}, 0.1, 0.0},
                                  {{{0.0, 0.0}, {1.0, 0.5}}, 0.0, 2.0}});
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> x_dist(-10.0, 10.0);
    std::uniform_int_distribution<std::int64_t> k_dist(-50, 50);
    for (int i = 0; i < 10000; ++i) {
        const double x = x_dist(rng);
        CHECK(psi.evaluate(x, k_dist(rng)) * x >= 0.0);
    }
}

TEST_CASE("random_monotone determinism and invariants") {
    RandomMonotoneConfig cfg;
    cfg.slope_cap = 1.5;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto a = random_monotone(seed, cfg);
        const auto b = random_monotone(seed, cfg);
        CHECK(a == b);
        CHECK(a.slope_bound() <= cfg.slope_cap + 1e-12);
        CHECK(a(0.0) == 0.0);
        const auto& pts = a.breakpoints();
        for (std::size_t i = 1; i < pts.size(); ++i) {
            CHECK(pts[i].x > pts[i - 1].x);
            CHECK(pts[i].y >= pts[i - 1].y);
        }
    }
    CHECK(random_monotone(1, cfg) != random_monotone(2, cfg));
}

}  // TEST_SUITE
