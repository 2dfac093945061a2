#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ozf/signal.hpp"

namespace ozf {

struct Breakpoint {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Memoryless bounded monotone scalar map: linear interpolation between
/// breakpoints with strictly increasing x and nondecreasing y, fixed
/// extension slopes beyond the first/last breakpoint, and N(0) = 0.
/// The slope bound C with |N(x)| <= C |x| is the largest slope in sight.
class PiecewiseLinearMonotone {
  public:
    PiecewiseLinearMonotone(std::vector<Breakpoint> points, double left_slope = 0.0,
                            double right_slope = 0.0);

    static PiecewiseLinearMonotone zero();
    /// y = slope * x with slope >= 0 (extensions carry the same slope).
    static PiecewiseLinearMonotone linear(double slope);

    double operator()(double x) const;

    const std::vector<Breakpoint>& breakpoints() const { return points_; }
    double left_slope() const { return left_slope_; }
    double right_slope() const { return right_slope_; }
    double slope_bound() const { return slope_bound_; }

    friend bool operator==(const PiecewiseLinearMonotone&,
                           const PiecewiseLinearMonotone&) = default;

  private:
    std::vector<Breakpoint> points_;
    double left_slope_;
    double right_slope_;
    double slope_bound_ = 0.0;
};

/// Samplewise application; the support can only shrink since N(0) = 0.
Signal lift(const PiecewiseLinearMonotone& n, const Signal& v);

struct MonotoneInterpolation {
    PiecewiseLinearMonotone function;
    Signal v_hat;
    Signal w_hat;
};

/// Builds a monotone function through a similarly ordered pair. Where v
/// repeats with differing w (or v is zero with w nonzero), v is nudged onto
/// a line of slope delta in w so the data becomes single-valued; w is kept
/// as is, so w_hat = lift(N, v_hat) exactly and ||v - v_hat|| <= delta ||w||
/// (plus whatever the optional window truncates away). Throws
/// NotSimilarlyOrdered, or DeltaTooLarge when the nudges would cross
/// neighbouring values.
MonotoneInterpolation interpolate_monotone(const SequencePair& p, double delta = 1e-3,
                                           std::optional<std::int64_t> window = std::nullopt);

/// One phase of a (possibly time-varying) sector nonlinearity: a piecewise
/// linear map through the origin with x * value(x) >= 0 everywhere.
struct SectorPhase {
    std::vector<Breakpoint> breakpoints;
    double left_slope = 0.0;
    double right_slope = 0.0;
    friend bool operator==(const SectorPhase&, const SectorPhase&) = default;
};

/// Periodically time-varying sector nonlinearity psi(x, k): phase k mod P is
/// applied at time k. A single phase means time-invariant.
class SectorNonlinearity {
  public:
    explicit SectorNonlinearity(std::vector<SectorPhase> phases);

    static SectorNonlinearity zero();
    static SectorNonlinearity time_invariant(SectorPhase phase);

    std::size_t period() const { return phases_.size(); }
    const std::vector<SectorPhase>& phases() const { return phases_; }
    double lipschitz() const { return lipschitz_; }

    double evaluate(double x, std::int64_t k) const;

    friend bool operator==(const SectorNonlinearity&, const SectorNonlinearity&) = default;

  private:
    std::vector<SectorPhase> phases_;
    double lipschitz_ = 0.0;
};

struct RandomMonotoneConfig {
    std::size_t min_segments = 2;
    std::size_t max_segments = 8;
    double x_span = 4.0;
    double slope_cap = 2.0;
    friend bool operator==(const RandomMonotoneConfig&, const RandomMonotoneConfig&) = default;
};

/// Deterministic-in-seed generator of monotone maps with slopes in
/// [0, slope_cap] and zero extension slopes.
PiecewiseLinearMonotone random_monotone(std::uint64_t seed, const RandomMonotoneConfig& cfg = {});

}  // namespace ozf
