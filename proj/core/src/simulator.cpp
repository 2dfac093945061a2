#include "ozf/simulator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ozf/errors.hpp"

namespace ozf {

namespace {

constexpr double kGainFloor = 1e-12;

double solve_step(const PiecewiseLinearMonotone& n, double g0, double rhs) {
    // Root of phi(v) = v - g0 N(v) - rhs; phi is strictly increasing under
    // the well-posedness precondition.
    auto phi = [&](double v) { return v - g0 * n(v) - rhs; };
    if (phi(rhs) == 0.0) return rhs;
    double radius = 1.0 + std::abs(rhs);
    double lo = rhs - radius, hi = rhs + radius;
    std::size_t expansions = 0;
    while (phi(lo) > 0.0 || phi(hi) < 0.0) {
        if (++expansions > 200)
            throw BisectionFailure("simulate: could not bracket the per-step root");
        radius *= 2.0;
        lo = rhs - radius;
        hi = rhs + radius;
    }
    for (std::size_t it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double f = phi(mid);
        if (f == 0.0) return mid;
        if (f < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

bool growth_detected(const std::vector<double>& gains) {
    double last = std::numeric_limits<double>::quiet_NaN();
    for (auto it = gains.rbegin(); it != gains.rend(); ++it)
        if (!std::isnan(*it)) {
            last = *it;
            break;
        }
    if (std::isnan(last)) return false;
    double mid = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = gains.size() / 2 + 1; k-- > 0;)
        if (!std::isnan(gains[k])) {
            mid = gains[k];
            break;
        }
    if (std::isnan(mid)) return false;
    return last > 4.0 * mid && last > 100.0;
}

}  // namespace

SimResult simulate(const SimConfig& cfg) {
    if (cfg.horizon == 0) throw std::invalid_argument("simulate: horizon must be >= 1");
    if (!cfg.input.is_zero() && cfg.input.start() < 0)
        throw std::invalid_argument("simulate: input must be supported on nonnegative indices");
    if (!cfg.allow_unstable && !cfg.plant.is_stable())
        throw UnstablePlant("simulate: plant is not stable (use probe mode to override)");

    const double g0 = cfg.plant.feedthrough();
    if (g0 != 0.0) {
        if (cfg.feedthrough == FeedthroughPolicy::reject)
            throw std::invalid_argument("simulate: plant has direct feedthrough");
        const double cap = cfg.nonlinearity.slope_bound();
        if (!(g0 <= 0.0 || g0 * cap < 1.0))
            throw WellPosednessUnverifiable(
                "simulate: need g0 <= 0 or g0 * C < 1 for a unique per-step solution");
    }

    const auto& b = cfg.plant.num();
    const auto& a = cfg.plant.den();
    const std::size_t h = cfg.horizon;

    std::vector<double> v(h, 0.0), w(h, 0.0), y(h, 0.0);
    std::vector<double> gains(h, std::numeric_limits<double>::quiet_NaN());
    double w_energy = 0.0, e_energy = 0.0;
    double peak = 0.0;

    for (std::size_t k = 0; k < h; ++k) {
        // Contribution of strictly past samples to (G w)_k.
        double tail = 0.0;
        for (std::size_t i = 1; i < b.size() && i <= k; ++i) tail += b[i] * w[k - i];
        for (std::size_t i = 1; i < a.size() && i <= k; ++i) tail -= a[i] * y[k - i];
        tail /= a[0];

        const double ek = cfg.input[static_cast<std::int64_t>(k)];
        const double rhs = ek + tail;
        const double vk = g0 == 0.0 ? rhs : solve_step(cfg.nonlinearity, g0, rhs);
        const double wk = cfg.nonlinearity(vk);
        v[k] = vk;
        w[k] = wk;
        y[k] = vk - ek;

        w_energy += wk * wk;
        e_energy += ek * ek;
        if (e_energy > kGainFloor * kGainFloor) {
            gains[k] = std::sqrt(w_energy / e_energy);
            peak = std::max(peak, gains[k]);
        }
    }

    SimResult out;
    out.v = Signal(0, std::move(v));
    out.w = Signal(0, std::move(w));
    out.diverged = growth_detected(gains);
    out.gain_trace = std::move(gains);
    out.peak_gain = peak;
    return out;
}

std::vector<Signal> input_family(const InputFamilyConfig& cfg) {
    const std::size_t h = std::max<std::size_t>(cfg.horizon, 4);
    std::vector<Signal> family;
    family.push_back(Signal::impulse(0, cfg.amplitude));
    family.push_back(Signal(0, std::vector<double>(h, cfg.amplitude)));

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> len_dist(h / 8 + 1, h / 2 + 1);
    std::bernoulli_distribution sign_dist(0.5);
    for (std::size_t i = 0; i < cfg.n_bursts; ++i) {
        const std::size_t len = len_dist(rng);
        std::vector<double> vals(len);
        for (double& x : vals) x = sign_dist(rng) ? cfg.amplitude : -cfg.amplitude;
        family.emplace_back(0, std::move(vals));
    }
    std::uniform_real_distribution<double> omega_dist(0.1, std::numbers::pi - 0.1);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < cfg.n_tones; ++i) {
        const double omega = omega_dist(rng);
        const double phase = phase_dist(rng);
        std::vector<double> vals(h / 2 + 1);
        for (std::size_t k = 0; k < vals.size(); ++k)
            vals[k] = cfg.amplitude * std::sin(omega * static_cast<double>(k) + phase);
        family.emplace_back(0, std::move(vals));
    }
    return family;
}

GainEstimate estimate_gain(const RationalPlant& plant, const PiecewiseLinearMonotone& n,
                           const InputFamilyConfig& inputs, std::size_t horizon,
                           bool allow_unstable) {
    // One stability decision for the whole sweep; simulate() would otherwise
    // redo the winding test per input.
    if (!allow_unstable && !plant.is_stable())
        throw UnstablePlant("estimate_gain: plant is not stable (use probe mode to override)");
    GainEstimate est;
    const std::vector<Signal> family = input_family(inputs);
    for (std::size_t i = 0; i < family.size(); ++i) {
        SimConfig cfg{plant, n, family[i], horizon, FeedthroughPolicy::solve_implicit,
                      /*allow_unstable=*/true};
        const SimResult r = simulate(cfg);
        if (r.peak_gain > est.gamma_hat) {
            est.gamma_hat = r.peak_gain;
            est.worst_input = i;
        }
        est.diverged = est.diverged || r.diverged;
    }
    return est;
}

namespace {

double incumbent_gain(const RationalPlant& plant, const PiecewiseLinearMonotone& n,
                      const ProbeBudget& budget, std::size_t* worst_input) {
    const GainEstimate est =
        estimate_gain(plant, n, budget.inputs, budget.horizon, budget.allow_unstable);
    *worst_input = est.worst_input;
    return est.gamma_hat;
}

}  // namespace

ProbeResult destabilization_probe(const RationalPlant& plant, const ProbeBudget& raw_budget) {
    if (!raw_budget.allow_unstable && !plant.is_stable())
        throw UnstablePlant("destabilization_probe: plant is not stable (probe mode overrides)");
    ProbeBudget budget = raw_budget;
    budget.allow_unstable = true;  // decided above, once

    ProbeResult best;
    std::size_t best_input = 0;

    for (std::size_t c = 0; c < budget.candidates; ++c) {
        const PiecewiseLinearMonotone n = random_monotone(budget.seed + c, budget.nonlinearity);
        std::size_t worst_input = 0;
        const double gain = incumbent_gain(plant, n, budget, &worst_input);
        if (gain > best.gamma_hat) {
            best.gamma_hat = gain;
            best.worst_nonlinearity = n;
            best_input = worst_input;
        }
    }

    // Coordinate refinement: push each interior breakpoint to the extremes
    // allowed by monotonicity and the slope cap, keep improvements.
    const double cap = budget.nonlinearity.slope_cap;
    for (std::size_t round = 0; round < budget.refinement_rounds; ++round) {
        bool improved = false;
        const std::vector<Breakpoint> pts = best.worst_nonlinearity.breakpoints();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i].x == 0.0) continue;
            double lo, hi;
            if (i == 0) {
                lo = pts[i + 1].y - cap * (pts[i + 1].x - pts[i].x);
                hi = pts[i + 1].y;
            } else if (i + 1 == pts.size()) {
                lo = pts[i - 1].y;
                hi = pts[i - 1].y + cap * (pts[i].x - pts[i - 1].x);
            } else {
                lo = std::max(pts[i - 1].y, pts[i + 1].y - cap * (pts[i + 1].x - pts[i].x));
                hi = std::min(pts[i + 1].y, pts[i - 1].y + cap * (pts[i].x - pts[i - 1].x));
            }
            for (const double candidate : {lo, hi, 0.5 * (lo + hi)}) {
                std::vector<Breakpoint> trial = pts;
                trial[i].y = candidate;
                PiecewiseLinearMonotone n = [&]() -> PiecewiseLinearMonotone {
                    try {
                        return PiecewiseLinearMonotone(trial, 0.0, 0.0);
                    } catch (const std::invalid_argument&) {
                        return best.worst_nonlinearity;
                    }
                }();
                if (n == best.worst_nonlinearity) continue;
                std::size_t worst_input = 0;
                const double gain = incumbent_gain(plant, n, budget, &worst_input);
                if (gain > best.gamma_hat) {
                    best.gamma_hat = gain;
                    best.worst_nonlinearity = n;
                    best_input = worst_input;
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }

    const std::vector<Signal> family = input_family(budget.inputs);
    best.worst_input = family[best_input];
    const GainEstimate final_est = estimate_gain(plant, best.worst_nonlinearity, budget.inputs,
                                                 budget.horizon, budget.allow_unstable);
    best.diverged = final_est.diverged;
    return best;
}

}  // namespace ozf
