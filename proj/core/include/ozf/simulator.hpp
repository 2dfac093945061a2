#pragma once

#include <cstdint>
#include <vector>

#include "ozf/nonlinearity.hpp"
#include "ozf/plant.hpp"
#include "ozf/signal.hpp"

namespace ozf {

enum class FeedthroughPolicy {
    solve_implicit,  // resolve v_k - g0 N(v_k) = c_k by bisection
    reject,          // refuse plants with direct feedthrough
};

/// Closed loop v = G w + e, w = N(v), stepped over [0, horizon).
struct SimConfig {
    RationalPlant plant;
    PiecewiseLinearMonotone nonlinearity;
    Signal input;  // supported on nonnegative indices
    std::size_t horizon = 64;
    FeedthroughPolicy feedthrough = FeedthroughPolicy::solve_implicit;
    bool allow_unstable = false;  // probe mode
};

struct SimResult {
    Signal v;
    Signal w;
    /// ||P_tau w|| / ||P_tau e|| per step; NaN where ||P_tau e|| vanishes.
    std::vector<double> gain_trace;
    double peak_gain = 0.0;
    bool diverged = false;
};

/// Steps the loop. With nonzero feedthrough g0, each step solves the scalar
/// equation v - g0 N(v) = c, which has a unique root when g0 <= 0 or
/// g0 * C < 1 (C the slope bound); this is checked up front and
/// WellPosednessUnverifiable is thrown otherwise.
SimResult simulate(const SimConfig& cfg);

struct InputFamilyConfig {
    std::size_t horizon = 64;
    std::size_t n_bursts = 4;
    std::size_t n_tones = 4;
    double amplitude = 1.0;
    std::uint64_t seed = 1;
};

/// Impulse, step, random sign bursts and windowed tones; deterministic in
/// the seed.
std::vector<Signal> input_family(const InputFamilyConfig& cfg);

struct GainEstimate {
    double gamma_hat = 0.0;
    bool diverged = false;
    std::size_t worst_input = 0;
};

/// Largest peak gain over the input family: a lower bound on the closed-loop
/// gain, never an upper bound.
GainEstimate estimate_gain(const RationalPlant& plant, const PiecewiseLinearMonotone& n,
                           const InputFamilyConfig& inputs, std::size_t horizon,
                           bool allow_unstable = false);

struct ProbeBudget {
    std::size_t candidates = 64;
    std::size_t refinement_rounds = 2;
    std::uint64_t seed = 1;
    RandomMonotoneConfig nonlinearity;
    InputFamilyConfig inputs;
    std::size_t horizon = 64;
    bool allow_unstable = false;
};

struct ProbeResult {
    PiecewiseLinearMonotone worst_nonlinearity = PiecewiseLinearMonotone::zero();
    Signal worst_input;
    double gamma_hat = 0.0;
    bool diverged = false;
};

/// Randomized search over generated monotone nonlinearities followed by
/// deterministic coordinate refinement of the incumbent's breakpoints,
/// maximizing the estimated gain. Deterministic in the seed.
ProbeResult destabilization_probe(const RationalPlant& plant, const ProbeBudget& budget);

}  // namespace ozf
