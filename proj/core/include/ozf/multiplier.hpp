#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "ozf/matrix.hpp"
#include "ozf/nonlinearity.hpp"
#include "ozf/periodic_banded.hpp"
#include "ozf/plant.hpp"
#include "ozf/signal.hpp"

namespace ozf {

enum class MultiplierMode {
    hyperdominant,  // sum of coefficients >= 0
    zero_excess,    // sum of coefficients == 0
};

/// Noncausal FIR multiplier with coefficients m_{-B}..m_{B}: nonpositive off
/// lags, nonnegative center, and the mode's coefficient-sum constraint. Its
/// doubly infinite matrix is the Toeplitz band with m_{i-j} at (i, j).
class FirMultiplier {
  public:
    FirMultiplier(std::size_t bandwidth, std::vector<double> coeffs, MultiplierMode mode);

    /// The identity multiplier m_0 = 1.
    static FirMultiplier delta(MultiplierMode mode = MultiplierMode::hyperdominant);

    std::size_t bandwidth() const { return bandwidth_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    MultiplierMode mode() const { return mode_; }

    /// m_k for |k| <= B, zero beyond.
    double coeff(std::int64_t k) const;
    double coefficient_sum() const;

    /// sum_k m_k e^{-j omega k}.
    std::complex<double> frequency_response(double omega) const;

    friend bool operator==(const FirMultiplier&, const FirMultiplier&) = default;

  private:
    std::size_t bandwidth_;
    std::vector<double> coeffs_;  // coeffs_[B + k] = m_k
    MultiplierMode mode_;
};

/// Uniform evaluation grid on [0, 2pi) together with the required frequency
/// margin. Needs at least 4B+4 points for a bandwidth-B multiplier.
struct FrequencyGrid {
    std::size_t n_points = 512;
    double margin = 1e-6;

    static FrequencyGrid for_bandwidth(std::size_t bandwidth) {
        return {std::max<std::size_t>(512, 16 * bandwidth), 1e-6};
    }
    std::vector<double> omegas() const;
};

struct FdiCheck {
    bool pass = false;
    double worst_omega = 0.0;
    double worst_value = 0.0;
    /// Continuum margin certified through the derivative bound; at least
    /// margin/2 whenever pass is true.
    double certified_margin = 0.0;
    std::size_t points_used = 0;
};

/// Checks Re{M(e^{j w}) G(e^{j w})} <= -margin over the grid and converts the
/// grid pass into a continuum statement by bounding the derivative of the
/// response; the grid is doubled as needed until the bound certifies margin/2.
FdiCheck verify_fdi(const FirMultiplier& m, const RationalPlant& g, const FrequencyGrid& grid);

struct SearchReport {
    bool feasible = false;
    std::optional<FirMultiplier> multiplier;
    double worst_frequency = 0.0;
    double worst_value = 0.0;
    std::size_t lp_iterations = 0;
    double certificate_margin = 0.0;
    /// Unresolvable constraint mass when infeasible (phase-1 optimum).
    double infeasibility = 0.0;
    /// True when the LP infeasibility certificate re-checked against the
    /// constraint data.
    bool farkas_valid = false;
};

/// Linear feasibility search over m_{-B}..m_B with m_0 normalized to one:
/// sign and mode constraints plus one frequency-domain row per grid point,
/// solved by two-phase simplex. A feasible multiplier is re-verified with
/// verify_fdi before it is reported.
SearchReport search_fir(const RationalPlant& g, std::size_t bandwidth, const FrequencyGrid& grid,
                        MultiplierMode mode);

/// Diagonal averaging of a valid periodic banded multiplier over one period;
/// the result is Toeplitz (LTI) and zero excess.
FirMultiplier average_to_lti(const PeriodicBandedOperator& m);

/// H x H window of the doubly infinite multiplier matrix.
Matrix truncation(const FirMultiplier& m, std::size_t horizon);
Matrix truncation(const PeriodicBandedOperator& m, std::size_t horizon);

struct NegativityCheck {
    bool holds = false;
    double max_eig = 0.0;
    Signal witness;  // top eigenvector when the check fails
};

/// Finite-horizon quadratic negativity: largest eigenvalue of
/// sym(T_M T_G) + eps I on the given horizon, via cyclic Jacobi.
NegativityCheck quadratic_negativity(const Matrix& multiplier_truncation, const RationalPlant& g,
                                     std::size_t horizon, double epsilon);
NegativityCheck quadratic_negativity(const FirMultiplier& m, const RationalPlant& g,
                                     std::size_t horizon, double epsilon);
NegativityCheck quadratic_negativity(const PeriodicBandedOperator& m, const RationalPlant& g,
                                     std::size_t horizon, double epsilon);

struct ProbeConfig {
    std::size_t horizon = 32;
    std::size_t n_random = 64;
    double amplitude = 1.0;
    std::uint64_t seed = 1;
};

struct CertificateProbe {
    double max_value = 0.0;
    bool violated = false;
    Signal worst_input;
    std::size_t probes = 0;
};

/// Falsifier for the combined nonlinear-multiplier inequality: evaluates
/// J(w) = <M phi0(Gw), w> + sum_k psi((Gw)_k, k) w_k + eps ||w||^2 over
/// coordinate, random and eigen-witness probes on the horizon. A nonpositive
/// maximum is evidence, not a proof.
CertificateProbe nonlinear_certificate(const Matrix& multiplier_truncation,
                                       const PiecewiseLinearMonotone& phi0,
                                       const SectorNonlinearity& psi, const RationalPlant& g,
                                       double epsilon, const ProbeConfig& cfg);
CertificateProbe nonlinear_certificate(const FirMultiplier& m, const PiecewiseLinearMonotone& phi0,
                                       const SectorNonlinearity& psi, const RationalPlant& g,
                                       double epsilon, const ProbeConfig& cfg);
CertificateProbe nonlinear_certificate(const PeriodicBandedOperator& m,
                                       const PiecewiseLinearMonotone& phi0,
                                       const SectorNonlinearity& psi, const RationalPlant& g,
                                       double epsilon, const ProbeConfig& cfg);

}  // namespace ozf
