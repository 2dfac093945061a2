#include "ozf/plant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ozf/errors.hpp"

namespace ozf {

namespace {

std::complex<double> eval_poly(const std::vector<double>& coeffs, std::complex<double> x) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

}  // namespace

RationalPlant::RationalPlant(std::vector<double> num, std::vector<double> den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.empty() || den_[0] == 0.0)
        throw std::invalid_argument("RationalPlant: leading denominator coefficient must be nonzero");
    if (num_.empty()) num_ = {0.0};
}

std::complex<double> RationalPlant::frequency_response(double omega) const {
    const std::complex<double> x = std::polar(1.0, -omega);  // e^{-j omega}
    const std::complex<double> d = eval_poly(den_, x);
    if (std::abs(d) < 1e-12)
        throw Error("frequency_response: denominator vanishes on the unit circle");
    return eval_poly(num_, x) / d;
}

std::vector<double> RationalPlant::impulse_response(std::size_t n) const {
    if (n == 0) throw std::invalid_argument("impulse_response: length must be >= 1");
    std::vector<double> g(n, 0.0);
    const double a0 = den_[0];
    for (std::size_t k = 0; k < n; ++k) {
        double acc = k < num_.size() ? num_[k] : 0.0;
        const std::size_t imax = std::min(k, den_.size() - 1);
        for (std::size_t i = 1; i <= imax; ++i) acc -= den_[i] * g[k - i];
        g[k] = acc / a0;
    }
    return g;
}

namespace {

// Phase increment between consecutive curve points, refined by bisection
// whenever a step turns more than pi/2. theta in [0, 2pi], z-domain
// denominator polynomial a(z) = a0 z^n + ... + an evaluated at e^{j theta}.
std::complex<double> eval_denominator_z(const std::vector<double>& den, double theta) {
    // den holds a0..an in delay powers; a(z) = sum_i den[i] z^{n-i}.
    const std::size_t n = den.size() - 1;
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
        acc += den[i] * std::polar(1.0, theta * static_cast<double>(n - i));
    return acc;
}

double arg_increment(const std::vector<double>& den, double t0, double t1,
                     std::complex<double> p0, std::complex<double> p1, int depth) {
    if (std::abs(p0) < 1e-10 || std::abs(p1) < 1e-10)
        throw InconclusiveWinding("is_stable: denominator curve passes near the origin");
    const double d = std::arg(p1 / p0);
    if (std::abs(d) <= std::numbers::pi / 2.0) return d;
    if (depth > 48) throw InconclusiveWinding("is_stable: winding refinement exhausted");
    const double tm = 0.5 * (t0 + t1);
    const std::complex<double> pm = eval_denominator_z(den, tm);
    return arg_increment(den, t0, tm, p0, pm, depth + 1) +
           arg_increment(den, tm, t1, pm, p1, depth + 1);
}

}  // namespace

bool RationalPlant::is_stable(std::size_t grid_points) const {
    const std::size_t n = den_.size() - 1;
    if (n == 0) return true;

    double total = 0.0;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(grid_points);
    std::complex<double> prev = eval_denominator_z(den_, 0.0);
    for (std::size_t k = 1; k <= grid_points; ++k) {
        const double t = step * static_cast<double>(k);
        const std::complex<double> cur = eval_denominator_z(den_, t);
        total += arg_increment(den_, t - step, t, prev, cur, 0);
        prev = cur;
    }
    const double winding = total / (2.0 * std::numbers::pi);
    const long rounded = std::lround(winding);
    if (std::abs(winding - static_cast<double>(rounded)) > 0.25)
        throw InconclusiveWinding("is_stable: winding number did not settle to an integer");
    return rounded == static_cast<long>(n);
}

ToeplitzTruncation toeplitz_truncation(const RationalPlant& g, std::size_t horizon) {
    if (horizon == 0) throw std::invalid_argument("toeplitz_truncation: horizon must be >= 1");
    const std::vector<double> h = g.impulse_response(horizon);
    ToeplitzTruncation t{horizon, Matrix(horizon, horizon)};
    for (std::size_t i = 0; i < horizon; ++i)
        for (std::size_t j = 0; j <= i; ++j) t.entries(i, j) = h[i - j];
    return t;
}

Signal apply(const RationalPlant& g, const Signal& u, std::size_t horizon) {
    if (horizon == 0) throw std::invalid_argument("apply: horizon must be >= 1");
    if (!u.is_zero() && u.start() < 0)
        throw std::invalid_argument("apply: input must be supported on nonnegative indices");

    const auto& b = g.num();
    const auto& a = g.den();
    std::vector<double> y(horizon, 0.0);
    for (std::size_t k = 0; k < horizon; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i)
            acc += b[i] * u[static_cast<std::int64_t>(k) - static_cast<std::int64_t>(i)];
        const std::size_t imax = std::min(k, a.size() - 1);
        for (std::size_t i = 1; i <= imax; ++i) acc -= a[i] * y[k - i];
        y[k] = acc / a[0];
    }
    return Signal(0, std::move(y));
}

}  // namespace ozf
