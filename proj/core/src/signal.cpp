#include "ozf/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ozf {

Signal::Signal(std::int64_t start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
    std::size_t lead = 0;
    while (lead < values_.size() && values_[lead] == 0.0) ++lead;
    std::size_t tail = values_.size();
    while (tail > lead && values_[tail - 1] == 0.0) --tail;
    if (lead == tail) {
        start_ = 0;
        values_.clear();
        return;
    }
    if (lead > 0 || tail < values_.size()) {
        values_ = std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(lead),
                                      values_.begin() + static_cast<std::ptrdiff_t>(tail));
        start_ += static_cast<std::int64_t>(lead);
    }
}

Signal Signal::impulse(std::int64_t at, double amplitude) {
    return Signal(at, {amplitude});
}

double Signal::operator[](std::int64_t k) const {
    if (k < start_ || k >= end()) return 0.0;
    return values_[static_cast<std::size_t>(k - start_)];
}

double Signal::norm_sq() const {
    double s = 0.0;
    for (double x : values_) s += x * x;
    return s;
}

double Signal::norm() const { return std::sqrt(norm_sq()); }

double inner_product(const Signal& u, const Signal& w) {
    const std::int64_t lo = std::max(u.start(), w.start());
    const std::int64_t hi = std::min(u.end(), w.end());
    double s = 0.0;
    for (std::int64_t k = lo; k < hi; ++k) s += u[k] * w[k];
    return s;
}

Signal shift(const Signal& u, std::int64_t tau) {
    return Signal(u.start() + tau, u.values());
}

Signal truncate(const Signal& u, std::int64_t tau) {
    if (u.is_zero() || tau >= u.end() - 1) return u;
    if (tau < u.start()) return Signal::zero();
    std::vector<double> vals(u.values().begin(),
                             u.values().begin() + static_cast<std::ptrdiff_t>(tau - u.start() + 1));
    return Signal(u.start(), std::move(vals));
}

Signal truncate_window(const Signal& u, std::int64_t a, std::int64_t b) {
    if (a > b) throw std::invalid_argument("truncate_window: a > b");
    if (u.is_zero() || b < u.start() || a >= u.end()) return Signal::zero();
    const std::int64_t lo = std::max(a, u.start());
    const std::int64_t hi = std::min(b, u.end() - 1);
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t k = lo; k <= hi; ++k) vals.push_back(u[k]);
    return Signal(lo, std::move(vals));
}

Signal add(const Signal& a, const Signal& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t lo = std::min(a.start(), b.start());
    const std::int64_t hi = std::max(a.end(), b.end());
    std::vector<double> vals(static_cast<std::size_t>(hi - lo), 0.0);
    for (std::int64_t k = lo; k < hi; ++k) vals[static_cast<std::size_t>(k - lo)] = a[k] + b[k];
    return Signal(lo, std::move(vals));
}

Signal scale(const Signal& a, double c) {
    if (c == 0.0) return Signal::zero();
    std::vector<double> vals = a.values();
    for (double& x : vals) x *= c;
    return Signal(a.start(), std::move(vals));
}

namespace {

// Samples (v_k, w_k) over the union of the two supports plus one synthetic
// (0, 0) standing in for every implicit index.
std::vector<std::pair<double, double>> paired_samples(const SequencePair& p) {
    std::vector<std::pair<double, double>> s;
    if (!p.v.is_zero() || !p.w.is_zero()) {
        const std::int64_t lo = std::min(p.v.is_zero() ? p.w.start() : p.v.start(),
                                         p.w.is_zero() ? p.v.start() : p.w.start());
        const std::int64_t hi = std::max(p.v.is_zero() ? p.w.end() : p.v.end(),
                                         p.w.is_zero() ? p.v.end() : p.w.end());
        s.reserve(static_cast<std::size_t>(hi - lo) + 1);
        for (std::int64_t k = lo; k < hi; ++k) s.emplace_back(p.v[k], p.w[k]);
    }
    s.emplace_back(0.0, 0.0);
    return s;
}

}  // namespace

bool is_similarly_ordered(const SequencePair& p) {
    auto s = paired_samples(p);
    std::sort(s.begin(), s.end());  // by v, ties broken by w
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i].second < s[i - 1].second) return false;
    return true;
}

bool is_unbiased(const SequencePair& p) {
    for (const auto& [v, w] : paired_samples(p))
        if (v * w < 0.0) return false;
    return true;
}

}  // namespace ozf
