#include "ozf/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "ozf/errors.hpp"

namespace ozf {

namespace {

double piecewise_eval(const std::vector<Breakpoint>& pts, double left_slope, double right_slope,
                      double x) {
    if (x == 0.0) return 0.0;
    if (x < pts.front().x) return pts.front().y + left_slope * (x - pts.front().x);
    if (x >= pts.back().x) return pts.back().y + right_slope * (x - pts.back().x);
    // First breakpoint strictly right of x; x lands on the left endpoint of
    // its segment so breakpoint values are reproduced exactly.
    const auto it = std::upper_bound(pts.begin(), pts.end(), x,
                                     [](double v, const Breakpoint& b) { return v < b.x; });
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    return lo.y + (x - lo.x) * (hi.y - lo.y) / (hi.x - lo.x);
}

double max_slope_magnitude(const std::vector<Breakpoint>& pts, double left_slope,
                           double right_slope) {
    double m = std::max(std::abs(left_slope), std::abs(right_slope));
    for (std::size_t i = 1; i < pts.size(); ++i)
        m = std::max(m, std::abs((pts[i].y - pts[i - 1].y) / (pts[i].x - pts[i - 1].x)));
    return m;
}

void check_strictly_increasing_x(const std::vector<Breakpoint>& pts, const char* who) {
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (!(pts[i].x > pts[i - 1].x))
            throw std::invalid_argument(std::string(who) + ": breakpoint x must strictly increase");
}

}  // namespace

PiecewiseLinearMonotone::PiecewiseLinearMonotone(std::vector<Breakpoint> points, double left_slope,
                                                 double right_slope)
    : points_(std::move(points)), left_slope_(left_slope), right_slope_(right_slope) {
    if (points_.empty()) points_.push_back({0.0, 0.0});
    check_strictly_increasing_x(points_, "PiecewiseLinearMonotone");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (points_[i].y < points_[i - 1].y)
            throw std::invalid_argument("PiecewiseLinearMonotone: y must be nondecreasing");
    if (left_slope_ < 0.0 || right_slope_ < 0.0)
        throw std::invalid_argument("PiecewiseLinearMonotone: extension slopes must be >= 0");

    double scale = 0.0;
    for (const auto& p : points_) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    // Through-zero check, bypassing the x == 0 short-circuit of evaluation.
    double y0;
    if (0.0 < points_.front().x)
        y0 = points_.front().y + left_slope_ * (0.0 - points_.front().x);
    else if (0.0 >= points_.back().x)
        y0 = points_.back().y + right_slope_ * (0.0 - points_.back().x);
    else {
        const auto it = std::upper_bound(points_.begin(), points_.end(), 0.0,
                                         [](double v, const Breakpoint& b) { return v < b.x; });
        const Breakpoint& hi = *it;
        const Breakpoint& lo = *(it - 1);
        y0 = lo.y + (0.0 - lo.x) * (hi.y - lo.y) / (hi.x - lo.x);
    }
    if (std::abs(y0) > 1e-9 * std::max(1.0, scale))
        throw std::invalid_argument("PiecewiseLinearMonotone: must pass through (0, 0)");

    slope_bound_ = max_slope_magnitude(points_, left_slope_, right_slope_);
}

PiecewiseLinearMonotone PiecewiseLinearMonotone::zero() {
    return PiecewiseLinearMonotone({{0.0, 0.0}});
}

PiecewiseLinearMonotone PiecewiseLinearMonotone::linear(double slope) {
    if (slope < 0.0) throw std::invalid_argument("linear: slope must be >= 0");
    return PiecewiseLinearMonotone({{-1.0, -slope}, {0.0, 0.0}, {1.0, slope}}, slope, slope);
}

double PiecewiseLinearMonotone::operator()(double x) const {
    return piecewise_eval(points_, left_slope_, right_slope_, x);
}

Signal lift(const PiecewiseLinearMonotone& n, const Signal& v) {
    std::vector<double> vals(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) vals[i] = n(v.values()[i]);
    return Signal(v.start(), std::move(vals));
}

MonotoneInterpolation interpolate_monotone(const SequencePair& p, double delta,
                                           std::optional<std::int64_t> window) {
    if (delta <= 0.0) throw std::invalid_argument("interpolate_monotone: delta must be > 0");
    if (!is_similarly_ordered(p))
        throw NotSimilarlyOrdered("interpolate_monotone: pair is not similarly ordered");

    Signal v_bar = p.v;
    Signal w_bar = p.w;
    if (window) {
        v_bar = truncate_window(v_bar, -*window, *window);
        w_bar = truncate_window(w_bar, -*window, *window);
    }

    struct Sample {
        std::int64_t k;
        double v, w;
    };
    std::vector<Sample> samples;
    if (!v_bar.is_zero() || !w_bar.is_zero()) {
        const std::int64_t lo = std::min(v_bar.is_zero() ? w_bar.start() : v_bar.start(),
                                         w_bar.is_zero() ? v_bar.start() : w_bar.start());
        const std::int64_t hi = std::max(v_bar.is_zero() ? w_bar.end() : v_bar.end(),
                                         w_bar.is_zero() ? v_bar.end() : w_bar.end());
        for (std::int64_t k = lo; k < hi; ++k) samples.push_back({k, v_bar[k], w_bar[k]});
    }

    // Group samples sharing a v value; nudge each group onto a line of slope
    // delta in w. Anchoring positive groups at their smallest w and negative
    // groups at their largest keeps |v_hat - v| <= delta |w| samplewise.
    std::map<double, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < samples.size(); ++i) groups[samples[i].v].push_back(i);

    std::vector<double> v_hat_vals(samples.size(), 0.0);
    for (auto& [value, idx] : groups) {
        if (value == 0.0) {
            for (std::size_t i : idx) v_hat_vals[i] = delta * samples[i].w;
            continue;
        }
        double anchor = samples[idx.front()].w;
        for (std::size_t i : idx)
            anchor = value > 0.0 ? std::min(anchor, samples[i].w) : std::max(anchor, samples[i].w);
        for (std::size_t i : idx) v_hat_vals[i] = value + delta * (samples[i].w - anchor);
    }

    // Interpolation data: distinct perturbed pairs plus the origin.
    std::vector<Breakpoint> pts;
    pts.push_back({0.0, 0.0});
    for (std::size_t i = 0; i < samples.size(); ++i) pts.push_back({v_hat_vals[i], samples[i].w});
    std::sort(pts.begin(), pts.end(),
              [](const Breakpoint& a, const Breakpoint& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].x == pts[i - 1].x)
            throw DeltaTooLarge("interpolate_monotone: delta collides distinct samples");
        if (pts[i].y < pts[i - 1].y)
            throw DeltaTooLarge("interpolate_monotone: delta reorders neighbouring samples");
    }

    MonotoneInterpolation out{PiecewiseLinearMonotone(std::move(pts)), Signal::zero(),
                              Signal::zero()};
    if (!samples.empty()) {
        std::vector<double> vv(samples.size()), ww(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            vv[i] = v_hat_vals[i];
            ww[i] = samples[i].w;
        }
        out.v_hat = Signal(samples.front().k, std::move(vv));
        out.w_hat = Signal(samples.front().k, std::move(ww));
    }
    return out;
}

SectorNonlinearity::SectorNonlinearity(std::vector<SectorPhase> phases)
    : phases_(std::move(phases)) {
    if (phases_.empty()) throw std::invalid_argument("SectorNonlinearity: need at least one phase");
    for (auto& ph : phases_) {
        if (ph.breakpoints.empty()) ph.breakpoints.push_back({0.0, 0.0});
        check_strictly_increasing_x(ph.breakpoints, "SectorNonlinearity");

        // Ensure a breakpoint at the origin so no segment straddles it.
        const auto at0 = std::find_if(ph.breakpoints.begin(), ph.breakpoints.end(),
                                      [](const Breakpoint& b) { return b.x == 0.0; });
        if (at0 == ph.breakpoints.end()) {
            ph.breakpoints.push_back({0.0, 0.0});
            std::sort(ph.breakpoints.begin(), ph.breakpoints.end(),
                      [](const Breakpoint& a, const Breakpoint& b) { return a.x < b.x; });
        } else if (at0->y != 0.0) {
            throw std::invalid_argument("SectorNonlinearity: phase must map 0 to 0");
        }

        for (const auto& b : ph.breakpoints)
            if (b.x * b.y < 0.0)
                throw std::invalid_argument("SectorNonlinearity: breakpoint leaves the sector");
        if (ph.left_slope < 0.0 || ph.right_slope < 0.0)
            throw std::invalid_argument(
                "SectorNonlinearity: extension slopes must be >= 0 to stay in the sector");
        lipschitz_ = std::max(lipschitz_,
                              max_slope_magnitude(ph.breakpoints, ph.left_slope, ph.right_slope));
    }
}

SectorNonlinearity SectorNonlinearity::zero() { return SectorNonlinearity({SectorPhase{}}); }

SectorNonlinearity SectorNonlinearity::time_invariant(SectorPhase phase) {
    return SectorNonlinearity({std::move(phase)});
}

double SectorNonlinearity::evaluate(double x, std::int64_t k) const {
    const auto period = static_cast<std::int64_t>(phases_.size());
    const auto idx = static_cast<std::size_t>(((k % period) + period) % period);
    const SectorPhase& ph = phases_[idx];
    return piecewise_eval(ph.breakpoints, ph.left_slope, ph.right_slope, x);
}

PiecewiseLinearMonotone random_monotone(std::uint64_t seed, const RandomMonotoneConfig& cfg) {
    if (cfg.min_segments < 1 || cfg.max_segments < cfg.min_segments)
        throw std::invalid_argument("random_monotone: bad segment bounds");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> seg_dist(cfg.min_segments, cfg.max_segments);
    std::uniform_real_distribution<double> x_dist(-cfg.x_span, cfg.x_span);
    std::uniform_real_distribution<double> slope_dist(0.0, cfg.slope_cap);

    const std::size_t segments = seg_dist(rng);
    std::vector<double> xs{0.0};
    while (xs.size() < segments + 1) {
        const double x = x_dist(rng);
        bool clash = false;
        for (double e : xs)
            if (std::abs(e - x) < 1e-3 * cfg.x_span) clash = true;
        if (!clash) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());

    std::vector<double> slopes(xs.size() - 1);
    for (double& s : slopes) s = slope_dist(rng);

    // Integrate outward from the pinned origin sample.
    const std::size_t zero_at = static_cast<std::size_t>(
        std::find(xs.begin(), xs.end(), 0.0) - xs.begin());
    std::vector<double> ys(xs.size(), 0.0);
    for (std::size_t i = zero_at; i + 1 < xs.size(); ++i)
        ys[i + 1] = ys[i] + slopes[i] * (xs[i + 1] - xs[i]);
    for (std::size_t i = zero_at; i-- > 0;) ys[i] = ys[i + 1] - slopes[i] * (xs[i + 1] - xs[i]);

    std::vector<Breakpoint> pts(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pts[i] = {xs[i], ys[i]};
    return PiecewiseLinearMonotone(std::move(pts), 0.0, 0.0);
}

}  // namespace ozf
