#include "ozf/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ozf/errors.hpp"
#include "ozf/jacobi.hpp"
#include "ozf/linprog.hpp"

namespace ozf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEntryTol = 1e-12;
constexpr double kSumTol = 1e-9;
constexpr double kEigTol = 1e-9;

}  // namespace

FirMultiplier::FirMultiplier(std::size_t bandwidth, std::vector<double> coeffs,
                             MultiplierMode mode)
    : bandwidth_(bandwidth), coeffs_(std::move(coeffs)), mode_(mode) {
    if (coeffs_.size() != 2 * bandwidth_ + 1)
        throw DimensionMismatch("FirMultiplier: need 2B+1 coefficients");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i == bandwidth_) continue;
        if (coeffs_[i] > kEntryTol)
            throw std::invalid_argument("FirMultiplier: off-center coefficients must be <= 0");
        if (coeffs_[i] > 0.0) coeffs_[i] = 0.0;  // forgive roundoff-sized positives
    }
    if (coeffs_[bandwidth_] < -kEntryTol)
        throw std::invalid_argument("FirMultiplier: center coefficient must be >= 0");
    coeffs_[bandwidth_] = std::max(coeffs_[bandwidth_], 0.0);

    const double s = coefficient_sum();
    if (mode_ == MultiplierMode::hyperdominant && s < -kSumTol)
        throw std::invalid_argument("FirMultiplier: coefficient sum must be >= 0");
    if (mode_ == MultiplierMode::zero_excess && std::abs(s) > kSumTol)
        throw std::invalid_argument("FirMultiplier: coefficient sum must be 0 in zero-excess mode");
}

FirMultiplier FirMultiplier::delta(MultiplierMode mode) {
    if (mode == MultiplierMode::zero_excess)
        throw std::invalid_argument("FirMultiplier::delta: the impulse has coefficient sum 1");
    return FirMultiplier(0, {1.0}, mode);
}

double FirMultiplier::coeff(std::int64_t k) const {
    if (std::llabs(k) > static_cast<std::int64_t>(bandwidth_)) return 0.0;
    return coeffs_[static_cast<std::size_t>(k + static_cast<std::int64_t>(bandwidth_))];
}

double FirMultiplier::coefficient_sum() const {
    double s = 0.0;
    for (double c : coeffs_) s += c;
    return s;
}

std::complex<double> FirMultiplier::frequency_response(double omega) const {
    std::complex<double> acc = 0.0;
    const auto b = static_cast<std::int64_t>(bandwidth_);
    for (std::int64_t k = -b; k <= b; ++k)
        acc += coeff(k) * std::polar(1.0, -omega * static_cast<double>(k));
    return acc;
}

std::vector<double> FrequencyGrid::omegas() const {
    std::vector<double> w(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        w[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n_points);
    return w;
}

namespace {

struct ResponseBounds {
    double deriv_bound = 0.0;  // sup |d/dw Re{M G}|
    bool valid = false;
};

// Conservative global bounds from coefficient mass: |N|, |N'|, |D|, |D'| by
// absolute sums, |D| from below by the grid minimum minus its own Lipschitz
// slack over half a grid step.
ResponseBounds response_derivative_bound(const FirMultiplier& m, const RationalPlant& g,
                                         const std::vector<double>& omegas) {
    double s0 = 0.0, s1 = 0.0;
    for (std::int64_t k = -static_cast<std::int64_t>(m.bandwidth());
         k <= static_cast<std::int64_t>(m.bandwidth()); ++k) {
        s0 += std::abs(m.coeff(k));
        s1 += std::abs(static_cast<double>(k)) * std::abs(m.coeff(k));
    }
    double n_max = 0.0, n1 = 0.0, d_max = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < g.num().size(); ++i) {
        n_max += std::abs(g.num()[i]);
        n1 += static_cast<double>(i) * std::abs(g.num()[i]);
    }
    for (std::size_t i = 0; i < g.den().size(); ++i) {
        d_max += std::abs(g.den()[i]);
        d1 += static_cast<double>(i) * std::abs(g.den()[i]);
    }

    double d_grid_min = std::numeric_limits<double>::infinity();
    for (double w : omegas) {
        const std::complex<double> x = std::polar(1.0, -w);
        std::complex<double> acc = 0.0;
        for (std::size_t i = g.den().size(); i-- > 0;) acc = acc * x + g.den()[i];
        d_grid_min = std::min(d_grid_min, std::abs(acc));
    }
    const double h = kTwoPi / static_cast<double>(omegas.size());
    const double d_min = d_grid_min - d1 * h / 2.0;

    ResponseBounds b;
    if (d_min <= 0.0) return b;  // grid too coarse to bound the denominator
    b.valid = true;
    b.deriv_bound = s1 * n_max / d_min + s0 * (n1 * d_max + n_max * d1) / (d_min * d_min);
    return b;
}

double response_real(const FirMultiplier& m, const RationalPlant& g, double omega) {
    return (m.frequency_response(omega) * g.frequency_response(omega)).real();
}

}  // namespace

FdiCheck verify_fdi(const FirMultiplier& m, const RationalPlant& g, const FrequencyGrid& grid) {
    if (!g.is_stable()) throw UnstablePlant("verify_fdi: plant is not stable");
    if (grid.n_points < 4 * m.bandwidth() + 4)
        throw std::invalid_argument("verify_fdi: grid needs at least 4B+4 points");

    constexpr std::size_t kMaxPoints = std::size_t{1} << 20;
    std::size_t n = grid.n_points;
    FdiCheck out;
    while (true) {
        FrequencyGrid cur{n, grid.margin};
        const std::vector<double> omegas = cur.omegas();
        double worst = -std::numeric_limits<double>::infinity();
        double worst_omega = 0.0;
        for (double w : omegas) {
            const double v = response_real(m, g, w);
            if (v > worst) {
                worst = v;
                worst_omega = w;
            }
        }
        const ResponseBounds bounds = response_derivative_bound(m, g, omegas);
        const double h = kTwoPi / static_cast<double>(n);
        const double continuum_max =
            bounds.valid ? worst + bounds.deriv_bound * h / 2.0
                         : std::numeric_limits<double>::infinity();

        out.worst_omega = worst_omega;
        out.worst_value = worst;
        out.certified_margin = -continuum_max;
        out.points_used = n;

        if (worst > -grid.margin) {
            out.pass = false;  // a grid point already violates the margin
            return out;
        }
        if (bounds.valid && continuum_max <= -grid.margin / 2.0) {
            out.pass = true;
            return out;
        }
        if (n >= kMaxPoints) {
            out.pass = false;  // could not certify the continuum inequality
            return out;
        }
        n *= 2;
    }
}

SearchReport search_fir(const RationalPlant& g, std::size_t bandwidth, const FrequencyGrid& grid,
                        MultiplierMode mode) {
    if (!g.is_stable()) throw UnstablePlant("search_fir: plant is not stable");
    if (grid.n_points < 4 * bandwidth + 4)
        throw std::invalid_argument("search_fir: grid needs at least 4B+4 points");

    const auto b = static_cast<std::int64_t>(bandwidth);
    std::vector<std::int64_t> lags;
    for (std::int64_t k = -b; k <= b; ++k)
        if (k != 0) lags.push_back(k);

    // Feasibility rows live on [0, pi]: the mirror frequencies produce
    // identical rows because the responses conjugate. The verifier's worst
    // frequency is fed back as an extra cut until the independent check
    // passes, since an LP solution can ride its grid rows at exactly -margin
    // while bulging past the margin between grid points.
    std::vector<double> row_omegas;
    for (std::size_t i = 0; i <= grid.n_points / 2; ++i)
        row_omegas.push_back(kTwoPi * static_cast<double>(i) /
                             static_cast<double>(grid.n_points));
    const std::size_t base_rows = row_omegas.size();

    SearchReport report;
    constexpr std::size_t kMaxCutRounds = 64;
    for (std::size_t round = 0;; ++round) {
        // Variables: the negated off-center coefficients u_k >= 0 plus a
        // slack t >= 0, maximized so the solution sits in the interior of
        // the frequency rows instead of riding them at exactly -margin.
        LpProblem lp;
        lp.n = lags.size() + 1;
        lp.c.assign(lp.n, 0.0);
        lp.c.back() = -1.0;
        std::vector<double> c0(row_omegas.size());
        for (std::size_t r = 0; r < row_omegas.size(); ++r) {
            const double w = row_omegas[r];
            const std::complex<double> gw = g.frequency_response(w);
            LpRow row;
            row.a.resize(lp.n, 0.0);
            for (std::size_t j = 0; j < lags.size(); ++j)
                row.a[j] = (std::polar(1.0, -w * static_cast<double>(lags[j])) * gw).real();
            row.a.back() = -1.0;
            c0[r] = gw.real();
            row.rel = LpRelation::ge;
            row.b = c0[r] + grid.margin;
            lp.rows.push_back(std::move(row));
        }
        {
            LpRow mode_row;
            mode_row.a.assign(lp.n, 1.0);
            mode_row.a.back() = 0.0;
            mode_row.rel = mode == MultiplierMode::hyperdominant ? LpRelation::le : LpRelation::eq;
            mode_row.b = 1.0;
            lp.rows.push_back(std::move(mode_row));
        }

        const LpResult sol = solve_lp(lp);
        report.lp_iterations += sol.iterations;

        if (sol.status == LpStatus::infeasible) {
            report.feasible = false;
            report.multiplier.reset();
            report.farkas_valid = verify_farkas(lp, sol.farkas);
            double mass = 0.0;
            for (std::size_t r = 0; r < row_omegas.size(); ++r)
                mass += sol.farkas[r] * lp.rows[r].b;
            report.infeasibility = mass;
            std::size_t arg = 0;
            for (std::size_t r = 1; r < row_omegas.size(); ++r)
                if (std::abs(sol.farkas[r]) > std::abs(sol.farkas[arg])) arg = r;
            report.worst_frequency = row_omegas[arg];
            report.worst_value = c0[arg];
            return report;
        }
        if (sol.status == LpStatus::unbounded)
            throw LpNumericalFailure("search_fir: feasibility program reported unbounded");

        std::vector<double> coeffs(2 * bandwidth + 1, 0.0);
        coeffs[bandwidth] = 1.0;
        for (std::size_t j = 0; j < lags.size(); ++j)
            coeffs[static_cast<std::size_t>(lags[j] + b)] = -std::max(sol.x[j], 0.0);
        if (mode == MultiplierMode::zero_excess) {
            double s = 0.0;
            for (double c : coeffs) s += c;
            coeffs[bandwidth] -= s;  // absorb LP roundoff into the center tap
        }
        FirMultiplier m(bandwidth, std::move(coeffs), mode);

        const FdiCheck check = verify_fdi(m, g, grid);
        report.multiplier = std::move(m);
        report.worst_frequency = check.worst_omega;
        report.worst_value = check.worst_value;
        report.certificate_margin = check.certified_margin;
        if (check.pass) {
            report.feasible = true;
            return report;
        }

        // Fold the violating frequency back onto [0, pi] and cut there.
        double cut = check.worst_omega;
        if (cut > std::numbers::pi) cut = kTwoPi - cut;
        bool fresh = round < kMaxCutRounds;
        for (std::size_t r = base_rows; r < row_omegas.size(); ++r)
            fresh = fresh && std::abs(row_omegas[r] - cut) > 1e-13;
        if (!fresh)
            throw LpNumericalFailure(
                "search_fir: cut generation stalled without certifying feasibility");
        row_omegas.push_back(cut);
    }
}

FirMultiplier average_to_lti(const PeriodicBandedOperator& m) {
    if (!validate(m).ok())
        throw NotZeroExcess("average_to_lti: operator fails multiplier-class validation");
    const std::size_t t = m.period();
    const auto b = static_cast<std::int64_t>(m.bandwidth());
    std::vector<double> coeffs(2 * m.bandwidth() + 1, 0.0);
    for (std::int64_t k = -b; k <= b; ++k) {
        // Diagonal average: the lag-k tap collects entries at column row - k.
        double acc = 0.0;
        for (std::size_t r = 0; r < t; ++r)
            acc += m.entry(static_cast<std::int64_t>(r), static_cast<std::int64_t>(r) - k);
        coeffs[static_cast<std::size_t>(b + k)] = acc / static_cast<double>(t);
    }
    return FirMultiplier(m.bandwidth(), std::move(coeffs), MultiplierMode::zero_excess);
}

Matrix truncation(const FirMultiplier& m, std::size_t horizon) {
    Matrix out(horizon, horizon);
    for (std::size_t i = 0; i < horizon; ++i)
        for (std::size_t j = 0; j < horizon; ++j)
            out(i, j) = m.coeff(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j));
    return out;
}

Matrix truncation(const PeriodicBandedOperator& m, std::size_t horizon) {
    Matrix out(horizon, horizon);
    for (std::size_t i = 0; i < horizon; ++i)
        for (std::size_t j = 0; j < horizon; ++j)
            out(i, j) = m.entry(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
    return out;
}

NegativityCheck quadratic_negativity(const Matrix& multiplier_truncation, const RationalPlant& g,
                                     std::size_t horizon, double epsilon) {
    if (horizon == 0) throw std::invalid_argument("quadratic_negativity: horizon must be >= 1");
    if (!g.is_stable()) throw UnstablePlant("quadratic_negativity: plant is not stable");
    if (multiplier_truncation.rows() != horizon || multiplier_truncation.cols() != horizon)
        throw DimensionMismatch("quadratic_negativity: truncation size != horizon");

    const Matrix tg = toeplitz_truncation(g, horizon).entries;
    Matrix q = symmetric_part(multiplier_truncation * tg);
    for (std::size_t i = 0; i < horizon; ++i) q(i, i) += epsilon;

    const MaxEigenPair top = max_eigenpair(q);
    NegativityCheck out;
    out.max_eig = top.value;
    out.holds = top.value <= kEigTol;
    if (!out.holds) out.witness = Signal(0, top.vector);
    return out;
}

NegativityCheck quadratic_negativity(const FirMultiplier& m, const RationalPlant& g,
                                     std::size_t horizon, double epsilon) {
    return quadratic_negativity(truncation(m, horizon), g, horizon, epsilon);
}

NegativityCheck quadratic_negativity(const PeriodicBandedOperator& m, const RationalPlant& g,
                                     std::size_t horizon, double epsilon) {
    return quadratic_negativity(truncation(m, horizon), g, horizon, epsilon);
}

CertificateProbe nonlinear_certificate(const Matrix& multiplier_truncation,
                                       const PiecewiseLinearMonotone& phi0,
                                       const SectorNonlinearity& psi, const RationalPlant& g,
                                       double epsilon, const ProbeConfig& cfg) {
    if (!g.is_stable()) throw UnstablePlant("nonlinear_certificate: plant is not stable");
    const std::size_t h = cfg.horizon;
    if (multiplier_truncation.rows() != h || multiplier_truncation.cols() != h)
        throw DimensionMismatch("nonlinear_certificate: truncation size != horizon");

    const Matrix tg = toeplitz_truncation(g, h).entries;

    auto evaluate = [&](const std::vector<double>& w) {
        const std::vector<double> x = tg * w;
        std::vector<double> z(h);
        for (std::size_t k = 0; k < h; ++k) z[k] = phi0(x[k]);
        const std::vector<double> y = multiplier_truncation * z;
        double j = 0.0;
        for (std::size_t k = 0; k < h; ++k) {
            j += y[k] * w[k];
            j += psi.evaluate(x[k], static_cast<std::int64_t>(k)) * w[k];
            j += epsilon * w[k] * w[k];
        }
        return j;
    };

    CertificateProbe out;
    out.max_value = -std::numeric_limits<double>::infinity();
    std::vector<double> worst(h, 0.0);

    auto consider = [&](const std::vector<double>& w) {
        const double j = evaluate(w);
        ++out.probes;
        if (j > out.max_value) {
            out.max_value = j;
            worst = w;
        }
    };

    std::vector<double> w(h, 0.0);
    for (std::size_t k = 0; k < h; ++k) {  // signed coordinate probes
        w.assign(h, 0.0);
        w[k] = cfg.amplitude;
        consider(w);
        w[k] = -cfg.amplitude;
        consider(w);
    }

    {
        // Eigen-witness of the linearized (phi0 ~ identity) quadratic form.
        Matrix q = symmetric_part(multiplier_truncation * tg);
        for (std::size_t i = 0; i < h; ++i) q(i, i) += epsilon;
        const MaxEigenPair top = max_eigenpair(q);
        std::vector<double> e = top.vector;
        for (double& v : e) v *= cfg.amplitude;
        consider(e);
        for (double& v : e) v = -v;
        consider(e);
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(-cfg.amplitude, cfg.amplitude);
    for (std::size_t r = 0; r < cfg.n_random; ++r) {
        for (std::size_t k = 0; k < h; ++k) w[k] = dist(rng);
        consider(w);
    }

    out.violated = out.max_value > 1e-9;
    out.worst_input = Signal(0, std::move(worst));
    return out;
}

CertificateProbe nonlinear_certificate(const FirMultiplier& m, const PiecewiseLinearMonotone& phi0,
                                       const SectorNonlinearity& psi, const RationalPlant& g,
                                       double epsilon, const ProbeConfig& cfg) {
    return nonlinear_certificate(truncation(m, cfg.horizon), phi0, psi, g, epsilon, cfg);
}

CertificateProbe nonlinear_certificate(const PeriodicBandedOperator& m,
                                       const PiecewiseLinearMonotone& phi0,
                                       const SectorNonlinearity& psi, const RationalPlant& g,
                                       double epsilon, const ProbeConfig& cfg) {
    return nonlinear_certificate(truncation(m, cfg.horizon), phi0, psi, g, epsilon, cfg);
}

}  // namespace ozf
