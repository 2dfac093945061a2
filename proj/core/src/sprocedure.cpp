#include "ozf/sprocedure.hpp"

#include <cmath>
#include <stdexcept>

#include "ozf/errors.hpp"
#include "ozf/jacobi.hpp"
#include "ozf/linprog.hpp"
#include "ozf/multiplier.hpp"

namespace ozf {

QuadraticForm::QuadraticForm(std::size_t horizon, Matrix m) : horizon_(horizon), m_(std::move(m)) {
    if (m_.rows() != 2 * horizon_ || m_.cols() != 2 * horizon_)
        throw DimensionMismatch("QuadraticForm: matrix must be 2H x 2H");
    if (max_abs_diff(m_, m_.transposed()) > 1e-12 * std::max(1.0, max_abs(m_)))
        throw std::invalid_argument("QuadraticForm: matrix must be symmetric");
}

QuadraticForm QuadraticForm::scaled_identity(std::size_t horizon, double scale) {
    Matrix m = Matrix::identity(2 * horizon);
    m *= scale;
    return QuadraticForm(horizon, std::move(m));
}

double QuadraticForm::evaluate(std::span<const double> f) const {
    if (f.size() != 2 * horizon_) throw DimensionMismatch("QuadraticForm: point must have 2H entries");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0.0) continue;
        double row = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) row += m_(i, j) * f[j];
        acc += f[i] * row;
    }
    return acc;
}

double QuadraticForm::evaluate(const Signal& v, const Signal& w) const {
    const auto h = static_cast<std::int64_t>(horizon_);
    for (const Signal* s : {&v, &w})
        if (!s->is_zero() && (s->start() < 0 || s->end() > h))
            throw DimensionMismatch("QuadraticForm: signal support exceeds the horizon");
    std::vector<double> f(2 * horizon_, 0.0);
    for (std::int64_t k = 0; k < h; ++k) {
        f[static_cast<std::size_t>(k)] = v[k];
        f[horizon_ + static_cast<std::size_t>(k)] = w[k];
    }
    return evaluate(f);
}

QuadraticForm build_sigma0(const RationalPlant& g, double gamma, std::size_t horizon) {
    if (gamma <= 0.0) throw std::invalid_argument("build_sigma0: gamma must be > 0");
    if (!g.is_stable()) throw UnstablePlant("build_sigma0: plant is not stable");

    const Matrix tg = toeplitz_truncation(g, horizon).entries;
    const double g2 = gamma * gamma;
    const std::size_t h = horizon;

    // ||w||^2 - gamma^2 ||v - T_G w||^2 in (v, w) blocks:
    //   vv: -g2 I, vw: g2 T_G, wv: g2 T_G', ww: I - g2 T_G' T_G.
    Matrix m(2 * h, 2 * h);
    for (std::size_t i = 0; i < h; ++i) m(i, i) = -g2;
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            m(i, h + j) = g2 * tg(i, j);
            m(h + j, i) = g2 * tg(i, j);
        }
    const Matrix tgt_tg = tg.transposed() * tg;
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
            m(h + i, h + j) = (i == j ? 1.0 : 0.0) - g2 * tgt_tg(i, j);
    return QuadraticForm(horizon, std::move(m));
}

QuadraticForm build_sigmak(const BandedPeriodicPermutation& c, std::size_t horizon) {
    if (horizon == 0 || horizon % c.period() != 0)
        throw HorizonNotMultipleOfPeriod("build_sigmak: horizon must be a multiple of the period");

    const Matrix tc = truncation(c.complement(), horizon);
    const std::size_t h = horizon;
    Matrix m(2 * h, 2 * h);
    // <(I - P) v, w> symmetrized into [[0, T_C'/2], [T_C/2, 0]].
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            m(j, h + i) += 0.5 * tc(i, j);
            m(h + i, j) += 0.5 * tc(i, j);
        }
    return QuadraticForm(horizon, std::move(m));
}

SequencePair witness_signal(std::size_t period) {
    if (period == 0) throw std::invalid_argument("witness_signal: period must be >= 1");
    std::vector<double> vals(period);
    for (std::size_t k = 0; k < period; ++k) vals[k] = 1.0 / static_cast<double>(k + 1);
    Signal s(0, std::move(vals));
    return {s, s};
}

namespace {

Matrix combined_matrix(const QuadraticForm& sigma0, std::span<const double> alpha,
                       const std::vector<QuadraticForm>& sigmas) {
    Matrix q = sigma0.matrix();
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
        if (alpha[k] == 0.0) continue;
        const Matrix& s = sigmas[k].matrix();
        for (std::size_t i = 0; i < q.rows(); ++i)
            for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) += alpha[k] * s(i, j);
    }
    return q;
}

}  // namespace

double combined_max_eig(const QuadraticForm& sigma0, std::span<const double> alpha,
                        const std::vector<QuadraticForm>& sigmas) {
    if (alpha.size() != sigmas.size())
        throw DimensionMismatch("combined_max_eig: alpha length != number of forms");
    for (double a : alpha)
        if (a < 0.0) throw std::invalid_argument("combined_max_eig: alpha must be nonnegative");
    return max_eigenvalue(combined_matrix(sigma0, alpha, sigmas), 1e-10);
}

CertificateSearchResult certificate_search(const QuadraticForm& sigma0,
                                           const std::vector<QuadraticForm>& sigmas,
                                           const CertificateSearchConfig& cfg) {
    for (const auto& s : sigmas)
        if (s.horizon() != sigma0.horizon())
            throw DimensionMismatch("certificate_search: form horizons differ");

    if (!sigmas.empty()) {
        if (cfg.slater_point.size() != 2 * sigma0.horizon())
            throw SlaterViolated("certificate_search: no interior point supplied for the forms");
        for (const auto& s : sigmas)
            if (s.evaluate(cfg.slater_point) <= 0.0)
                throw SlaterViolated("certificate_search: supplied point is not strictly interior");
    }

    CertificateSearchResult res;
    const std::size_t n = sigmas.size();
    std::vector<std::vector<double>> cut_sigma_values;  // per probe: sigma_k(f)
    std::vector<double> cut_sigma0_values;

    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        res.iterations = it;

        LpProblem lp;
        lp.n = n;
        lp.c.assign(n, 1.0);  // smallest multiplier mass; deterministic ties
        for (std::size_t j = 0; j < cut_sigma0_values.size(); ++j) {
            LpRow row;
            row.a = cut_sigma_values[j];
            row.rel = LpRelation::le;
            row.b = -cut_sigma0_values[j];
            lp.rows.push_back(std::move(row));
        }
        const LpResult sol = solve_lp(lp);
        if (sol.status == LpStatus::infeasible) {
            res.found = false;
            res.status = CertificateStatus::infeasible_at_horizon;
            return res;
        }
        if (sol.status != LpStatus::optimal)
            throw LpNumericalFailure("certificate_search: cut LP did not solve");

        const Matrix q = combined_matrix(sigma0, sol.x, sigmas);
        const MaxEigenPair top = max_eigenpair(q, 1e-10);
        res.last_max_eig = top.value;
        res.eig_trace.push_back(top.value);

        if (top.value <= cfg.eig_tol) {
            res.found = true;
            res.status = CertificateStatus::certified;
            res.certificate = Certificate{sol.x, top.value, it};
            return res;
        }

        cut_sigma0_values.push_back(sigma0.evaluate(top.vector));
        std::vector<double> sv(n);
        for (std::size_t k = 0; k < n; ++k) sv[k] = sigmas[k].evaluate(top.vector);
        cut_sigma_values.push_back(std::move(sv));
    }

    res.found = false;
    res.status = CertificateStatus::max_iterations;
    return res;
}

}  // namespace ozf
