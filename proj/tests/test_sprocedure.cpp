#include <random>

#include "doctest.h"
#include "ozf/errors.hpp"
#include "ozf/jacobi.hpp"
#include "ozf/multiplier.hpp"
#include "ozf/sprocedure.hpp"

using namespace ozf;

namespace {

std::vector<double> stacked_witness(std::size_t period, std::size_t horizon) {
    const SequencePair wit = witness_signal(period);
    std::vector<double> f(2 * horizon, 0.0);
    for (std::size_t k = 0; k < period; ++k) {
        f[k] = wit.v[static_cast<std::int64_t>(k)];
        f[horizon + k] = wit.w[static_cast<std::int64_t>(k)];
    }
    return f;
}

std::vector<QuadraticForm> nonzero_basis_forms(std::size_t period, std::size_t bandwidth,
                                               std::size_t horizon) {
    std::vector<QuadraticForm> sigmas;
    for (const auto& p : enumerate_basis(period, bandwidth))
        if (!p.is_identity()) sigmas.push_back(build_sigmak(p, horizon));
    return sigmas;
}

}  // namespace

TEST_SUITE("sprocedure") {

TEST_CASE("quadratic form basics") {
    Matrix bad(2, 2);
    bad(0, 1) = 1.0;  // not symmetric
    CHECK_THROWS_AS(QuadraticForm(1, bad), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticForm(2, Matrix::identity(2)), DimensionMismatch);

    const QuadraticForm id = QuadraticForm::scaled_identity(2, 1.0);
    CHECK(id.evaluate(std::vector<double>{1.0, 2.0, 3.0, 4.0}) == doctest::Approx(30.0));
    CHECK(id.evaluate(Signal(0, {1.0, 2.0}), Signal(0, {3.0, 4.0})) == doctest::Approx(30.0));
}

TEST_CASE("build_sigma0") {
    const QuadraticForm z = build_sigma0(RationalPlant::constant(0.0), 1.0, 1);
    CHECK(z.matrix()(0, 0) == doctest::Approx(-1.0));
    CHECK(z.matrix()(1, 1) == doctest::Approx(1.0));
    CHECK(z.matrix()(0, 1) == doctest::Approx(0.0));

    const QuadraticForm s = build_sigma0(RationalPlant::constant(-0.5), 2.0, 1);
    CHECK(s.matrix()(0, 0) == doctest::Approx(-4.0));
    CHECK(s.matrix()(0, 1) == doctest::Approx(-2.0));
    CHECK(s.matrix()(1, 0) == doctest::Approx(-2.0));
    CHECK(s.matrix()(1, 1) == doctest::Approx(0.0).scale(1.0));

    // On the graph subspace v = G w the form is ||w||^2.
    const RationalPlant g({0.4}, {1.0, -0.3});
    const QuadraticForm s2 = build_sigma0(g, 7.0, 6);
    const Signal w(0, {1.0, -0.5, 2.0});
    const Signal v = apply(g, w, 6);
    CHECK(s2.evaluate(v, w) == doctest::Approx(w.norm_sq()));

    CHECK_THROWS_AS(build_sigma0(RationalPlant::constant(0.0), 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_sigma0(RationalPlant({1.0}, {1.0, -2.0}), 1.0, 2), UnstablePlant);
}

TEST_CASE("build_sigmak") {
    const auto id = BandedPeriodicPermutation::identity(2, 0);
    CHECK(max_abs(build_sigmak(id, 4).matrix()) == 0.0);

    // I - swap(0, 1) on horizon 2: sigma(v, w) = (v0 - v1) w0 + (v1 - v0) w1.
    const BandedPeriodicPermutation swap01(2, 1, {1, -1});
    const QuadraticForm s = build_sigmak(swap01, 2);
    const Signal v(0, {3.0, 1.0});
    const Signal w(0, {2.0, -1.0});
    CHECK(s.evaluate(v, w) == doctest::Approx((3.0 - 1.0) * 2.0 + (1.0 - 3.0) * -1.0));

    CHECK_THROWS_AS(build_sigmak(swap01, 5), HorizonNotMultipleOfPeriod);
}

TEST_CASE("witness_signal is strictly positive on every nonzero basis form") {
    const SequencePair w3 = witness_signal(3);
    CHECK(w3.v == Signal(0, {1.0, 0.5, 1.0 / 3.0}));
    CHECK(w3.v == w3.w);

    const SequencePair w1 = witness_signal(1);
    CHECK(w1.v == Signal(0, {1.0}));
    CHECK(enumerate_basis(1, 0).size() == 1);  // identity only: the zero form

    for (std::size_t t : {std::size_t{3}, std::size_t{4}, std::size_t{5}}) {
        const auto f = stacked_witness(t, t);
        for (const auto& sigma : nonzero_basis_forms(t, 1, t)) CHECK(sigma.evaluate(f) > 0.0);
    }
}

TEST_CASE("certificate_search trivial cases") {
    const std::size_t h = 3;
    const QuadraticForm neg = QuadraticForm::scaled_identity(h, -1.0);
    CertificateSearchConfig cfg;
    const auto r0 = certificate_search(neg, {}, cfg);
    REQUIRE(r0.found);
    CHECK(r0.iterations == 1);
    CHECK(r0.certificate->alpha.empty());
    CHECK(r0.last_max_eig == doctest::Approx(-1.0));

    const auto sigmas = nonzero_basis_forms(3, 1, h);
    cfg.slater_point = stacked_witness(3, h);
    const auto r1 = certificate_search(neg, sigmas, cfg);
    REQUIRE(r1.found);
    for (double a : r1.certificate->alpha) CHECK(a == doctest::Approx(0.0));
}

TEST_CASE("certificate_search requires a Slater point") {
    const std::size_t h = 3;
    const auto sigmas = nonzero_basis_forms(3, 1, h);
    CertificateSearchConfig cfg;  // no point supplied
    CHECK_THROWS_AS(certificate_search(QuadraticForm::scaled_identity(h, -1.0), sigmas, cfg),
                    SlaterViolated);
    cfg.slater_point.assign(2 * h, 0.0);  // sigma_k = 0 there: not interior
    CHECK_THROWS_AS(certificate_search(QuadraticForm::scaled_identity(h, -1.0), sigmas, cfg),
                    SlaterViolated);
}

TEST_CASE("construct-then-solve instances are certified and re-verified") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t t = 3 + rep % 3;
        const std::size_t h = 2 * t;
        auto sigmas = nonzero_basis_forms(t, 1, h);
        std::uniform_int_distribution<std::size_t> pick(0, sigmas.size() - 1);
        std::uniform_real_distribution<double> wdist(0.5, 3.0);
        Matrix m = Matrix::identity(2 * h);
        m *= -0.01;
        for (int j = 0; j < 2; ++j) {
            const Matrix& s = sigmas[pick(rng)].matrix();
            const double a = wdist(rng);
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) -= a * s(i, k);
        }
        const QuadraticForm sigma0(h, m);

        CertificateSearchConfig cfg;
        cfg.slater_point = stacked_witness(t, h);
        const auto res = certificate_search(sigma0, sigmas, cfg);
        REQUIRE(res.found);
        CHECK(res.iterations <= 500);
        CHECK(res.certificate->max_eig <= 1e-8);
        // Independent re-verification of the certificate.
        CHECK(combined_max_eig(sigma0, res.certificate->alpha, sigmas) <= 1e-8);
        // The search makes progress: the certified value is far below the
        // first iterate. (The per-iteration trace need not be monotone.)
        CHECK(res.eig_trace.front() > 0.1);
        CHECK(res.eig_trace.back() <= 1e-8);
    }
}

TEST_CASE("positive-definite sigma0 is never certified") {
    const std::size_t t = 4;
    const std::size_t h = 2 * t;
    const auto sigmas = nonzero_basis_forms(t, 1, h);
    CertificateSearchConfig cfg;
    cfg.slater_point = stacked_witness(t, h);
    cfg.max_iterations = 60;
    const auto res = certificate_search(QuadraticForm::scaled_identity(h, 1.0), sigmas, cfg);
    CHECK_FALSE(res.found);
    CHECK(res.status != CertificateStatus::certified);
    // Traceless sigma_k terms cannot pull the unit trace below zero.
    CHECK(res.last_max_eig >= 1.0);
}

TEST_CASE("frequency-feasible static plants yield horizon certificates") {
    // Pipeline: an LTI multiplier for a static plant, extended to zero
    // excess, scaled until the horizon form is strictly negative, then
    // decomposed; the certificate search must succeed on those forms.
    const RationalPlant g = RationalPlant::constant(-0.5);
    const auto fir = search_fir(g, 0, FrequencyGrid::for_bandwidth(0),
                                MultiplierMode::hyperdominant);
    REQUIRE(fir.feasible);

    // Zero-excess extension: push the coefficient surplus to lag L = 2.
    const std::size_t lag = 2, t = 2 * lag + 1, h = 4 * t;
    auto ext = PeriodicBandedOperator::zero(t, lag);
    for (std::size_t r = 0; r < t; ++r) {
        ext.band_entry(r, 0) = fir.multiplier->coeff(0);
        ext.band_entry(r, static_cast<std::int64_t>(lag)) -= fir.multiplier->coefficient_sum();
    }
    REQUIRE(validate(ext).ok());

    const double lam = max_eigenvalue(
        symmetric_part(truncation(ext, h) * toeplitz_truncation(g, h).entries));
    REQUIRE(lam < 0.0);
    const double scale = 2.0 / -lam;  // negativity at epsilon = 2

    auto scaled = PeriodicBandedOperator::zero(t, lag);
    for (std::size_t r = 0; r < t; ++r)
        for (std::int64_t d = -static_cast<std::int64_t>(lag);
             d <= static_cast<std::int64_t>(lag); ++d)
            scaled.band_entry(r, d) = scale * ext.entry(static_cast<std::int64_t>(r),
                                                        static_cast<std::int64_t>(r) + d);
    REQUIRE(quadratic_negativity(scaled, g, h, 2.0).holds);

    const auto terms = conic_decompose_periodic(scaled);
    REQUIRE_FALSE(terms.empty());
    std::vector<QuadraticForm> sigmas;
    for (const auto& term : terms) sigmas.push_back(build_sigmak(term.perm, h));

    const double mu = 2.0 * scale;  // coefficient mass bound of the operator
    const QuadraticForm sigma0 = build_sigma0(g, std::max(2.0 * mu, 10.0), h);
    CertificateSearchConfig cfg;
    cfg.slater_point = stacked_witness(t, h);
    const auto res = certificate_search(sigma0, sigmas, cfg);
    REQUIRE(res.found);
    CHECK(combined_max_eig(sigma0, res.certificate->alpha, sigmas) <= 1e-8);
}

TEST_CASE("combined_max_eig") {
    const QuadraticForm neg = QuadraticForm::scaled_identity(2, -1.0);
    CHECK(combined_max_eig(neg, std::vector<double>{}, {}) == doctest::Approx(-1.0));

    Matrix d(4, 4);
    d(0, 0) = 2.0;
    d(1, 1) = -1.0;
    const QuadraticForm f(2, d);
    CHECK(combined_max_eig(f, std::vector<double>{}, {}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(combined_max_eig(f, std::vector<double>{-1.0}, {f}),
                    std::invalid_argument);
}

}  // TEST_SUITE
