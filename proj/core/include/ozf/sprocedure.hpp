#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ozf/matrix.hpp"
#include "ozf/periodic_banded.hpp"
#include "ozf/plant.hpp"
#include "ozf/signal.hpp"

namespace ozf {

/// Symmetric quadratic form over the stacked horizon variables
/// f = (v_0..v_{H-1}, w_0..w_{H-1}).
class QuadraticForm {
  public:
    QuadraticForm(std::size_t horizon, Matrix m);

    static QuadraticForm scaled_identity(std::size_t horizon, double scale);

    std::size_t horizon() const { return horizon_; }
    const Matrix& matrix() const { return m_; }

    double evaluate(std::span<const double> f) const;
    /// Stacks (v, w) over [0, H) and evaluates; supports must fit the horizon.
    double evaluate(const Signal& v, const Signal& w) const;

  private:
    std::size_t horizon_;
    Matrix m_;
};

/// sigma_0(v, w) = ||w||^2 - gamma^2 ||v - G w||^2 on the horizon.
QuadraticForm build_sigma0(const RationalPlant& g, double gamma, std::size_t horizon);

/// sigma_k(v, w) = <(I - P) v, w> truncated to the horizon, which must be a
/// multiple of the permutation's period.
QuadraticForm build_sigmak(const BandedPeriodicPermutation& c, std::size_t horizon);

/// v* = w* = (1, 1/2, ..., 1/T): strictly decreasing and positive, so every
/// nonzero basis complement evaluates to a strictly positive form on it.
SequencePair witness_signal(std::size_t period);

struct Certificate {
    std::vector<double> alpha;
    double max_eig = 0.0;
    std::size_t iterations = 0;
};

enum class CertificateStatus {
    certified,
    /// The sampled cuts already admit no nonnegative combination: no
    /// certificate exists at this horizon (says nothing beyond it).
    infeasible_at_horizon,
    /// Iteration cap reached; inconclusive.
    max_iterations,
};

struct CertificateSearchResult {
    bool found = false;
    CertificateStatus status = CertificateStatus::max_iterations;
    std::optional<Certificate> certificate;
    double last_max_eig = 0.0;
    std::size_t iterations = 0;
    /// Top eigenvalue of the combined form at each LP iterate.
    std::vector<double> eig_trace;
};

struct CertificateSearchConfig {
    std::size_t max_iterations = 500;
    double eig_tol = 1e-8;
    /// Stacked 2H point with sigma_k > 0 for every supplied form; required
    /// whenever the form list is nonempty (see witness_signal).
    std::vector<double> slater_point;
};

/// Cutting-plane search for alpha >= 0 with
/// lambda_max(Sigma_0 + sum_k alpha_k Sigma_k) <= eig_tol. Each round solves
/// a small LP over the probe constraints collected so far (minimizing
/// sum alpha as a deterministic regularizer) and adds the top eigenvector of
/// the combined form as the next probe.
CertificateSearchResult certificate_search(const QuadraticForm& sigma0,
                                           const std::vector<QuadraticForm>& sigmas,
                                           const CertificateSearchConfig& cfg);

double combined_max_eig(const QuadraticForm& sigma0, std::span<const double> alpha,
                        const std::vector<QuadraticForm>& sigmas);

}  // namespace ozf
