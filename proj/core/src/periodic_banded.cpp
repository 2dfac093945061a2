#include "ozf/periodic_banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ozf/errors.hpp"

namespace ozf {

namespace {

std::size_t mod_residue(std::int64_t k, std::size_t period) {
    const auto t = static_cast<std::int64_t>(period);
    return static_cast<std::size_t>(((k % t) + t) % t);
}

}  // namespace

PeriodicBandedOperator::PeriodicBandedOperator(std::size_t period, std::size_t bandwidth,
                                               std::vector<std::vector<double>> rows)
    : period_(period), bandwidth_(bandwidth), rows_(std::move(rows)) {
    if (period_ == 0) throw std::invalid_argument("PeriodicBandedOperator: period must be >= 1");
    if (rows_.size() != period_)
        throw DimensionMismatch("PeriodicBandedOperator: need one band row per residue");
    for (const auto& r : rows_)
        if (r.size() != 2 * bandwidth_ + 1)
            throw DimensionMismatch("PeriodicBandedOperator: band rows must have 2B+1 entries");
}

PeriodicBandedOperator PeriodicBandedOperator::zero(std::size_t period, std::size_t bandwidth) {
    return PeriodicBandedOperator(
        period, bandwidth,
        std::vector<std::vector<double>>(period, std::vector<double>(2 * bandwidth + 1, 0.0)));
}

double& PeriodicBandedOperator::band_entry(std::size_t residue, std::int64_t offset) {
    return rows_[residue][static_cast<std::size_t>(offset + static_cast<std::int64_t>(bandwidth_))];
}

double PeriodicBandedOperator::entry(std::int64_t i, std::int64_t j) const {
    const std::int64_t d = j - i;
    if (std::llabs(d) > static_cast<std::int64_t>(bandwidth_)) return 0.0;
    return rows_[mod_residue(i, period_)]
                [static_cast<std::size_t>(d + static_cast<std::int64_t>(bandwidth_))];
}

bool PeriodicValidation::ok(double tol) const {
    if (!period_band_ok || !sign_violations.empty()) return false;
    for (double s : row_sums)
        if (std::abs(s) > tol) return false;
    for (double s : col_sums)
        if (std::abs(s) > tol) return false;
    return true;
}

PeriodicValidation validate(const PeriodicBandedOperator& m) {
    const std::size_t t = m.period();
    const auto b = static_cast<std::int64_t>(m.bandwidth());

    PeriodicValidation v;
    v.period_band_ok = t >= 2 * m.bandwidth() + 1;
    v.row_sums.assign(t, 0.0);
    v.col_sums.assign(t, 0.0);

    for (std::size_t r = 0; r < t; ++r) {
        for (std::int64_t d = -b; d <= b; ++d) {
            const double e = m.entry(static_cast<std::int64_t>(r), static_cast<std::int64_t>(r) + d);
            if (d != 0 && e > 0.0) v.sign_violations.emplace_back(r, d);
            v.row_sums[r] += e;
        }
    }
    // Column sums over the infinite matrix reduce to one sum per residue
    // class: column c collects rows c-d for every band offset d.
    for (std::size_t c = 0; c < t; ++c) {
        for (std::int64_t d = -b; d <= b; ++d) {
            const std::int64_t i = static_cast<std::int64_t>(c) - d;
            v.col_sums[c] += m.entry(i, static_cast<std::int64_t>(c));
        }
    }
    return v;
}

Matrix fold(const PeriodicBandedOperator& m) {
    const std::size_t t = m.period();
    const auto b = static_cast<std::int64_t>(m.bandwidth());
    Matrix out(t, t);
    for (std::size_t r = 0; r < t; ++r)
        for (std::int64_t d = -b; d <= b; ++d)
            out(r, mod_residue(static_cast<std::int64_t>(r) + d, t)) +=
                m.entry(static_cast<std::int64_t>(r), static_cast<std::int64_t>(r) + d);
    return out;
}

PeriodicBandedOperator unfold(const Matrix& x, std::size_t period, std::size_t bandwidth) {
    if (!x.square() || x.rows() != period)
        throw DimensionMismatch("unfold: matrix must be T x T");
    if (period < 2 * bandwidth + 1)
        throw std::invalid_argument("unfold: requires T >= 2B+1");

    auto out = PeriodicBandedOperator::zero(period, bandwidth);
    const auto t = static_cast<std::int64_t>(period);
    const auto b = static_cast<std::int64_t>(bandwidth);
    for (std::size_t r = 0; r < period; ++r) {
        for (std::size_t c = 0; c < period; ++c) {
            const double e = x(r, c);
            if (e == 0.0) continue;
            // Unique in-band offset congruent to c - r (mod T), if any.
            std::int64_t d = static_cast<std::int64_t>(mod_residue(
                static_cast<std::int64_t>(c) - static_cast<std::int64_t>(r), period));
            if (d > b) d -= t;
            if (d < -b || d > b)
                throw BandInfeasible("unfold: entry (" + std::to_string(r) + ", " +
                                     std::to_string(c) + ") has no in-band column");
            out.band_entry(r, d) = e;
        }
    }
    return out;
}

BandedPeriodicPermutation::BandedPeriodicPermutation(std::size_t period, std::size_t bandwidth,
                                                     std::vector<int> displacement)
    : period_(period), bandwidth_(bandwidth), displacement_(std::move(displacement)) {
    if (period_ == 0) throw std::invalid_argument("BandedPeriodicPermutation: period must be >= 1");
    if (displacement_.size() != period_)
        throw DimensionMismatch("BandedPeriodicPermutation: one displacement per residue");
    std::vector<char> hit(period_, 0);
    for (std::size_t r = 0; r < period_; ++r) {
        if (std::abs(displacement_[r]) > static_cast<int>(bandwidth_))
            throw std::invalid_argument("BandedPeriodicPermutation: displacement exceeds bandwidth");
        hit[mod_residue(static_cast<std::int64_t>(r) + displacement_[r], period_)] = 1;
    }
    for (char h : hit)
        if (!h) throw std::invalid_argument("BandedPeriodicPermutation: residue map is not a bijection");
}

BandedPeriodicPermutation BandedPeriodicPermutation::identity(std::size_t period,
                                                              std::size_t bandwidth) {
    return BandedPeriodicPermutation(period, bandwidth, std::vector<int>(period, 0));
}

std::int64_t BandedPeriodicPermutation::image(std::int64_t k) const {
    return k + displacement_[mod_residue(k, period_)];
}

bool BandedPeriodicPermutation::is_identity() const {
    return std::all_of(displacement_.begin(), displacement_.end(), [](int d) { return d == 0; });
}

PeriodicBandedOperator BandedPeriodicPermutation::complement() const {
    auto out = PeriodicBandedOperator::zero(period_, bandwidth_);
    for (std::size_t r = 0; r < period_; ++r) {
        out.band_entry(r, 0) += 1.0;
        out.band_entry(r, displacement_[r]) -= 1.0;
    }
    return out;
}

std::vector<BandedPeriodicPermutation> enumerate_basis(std::size_t period, std::size_t bandwidth,
                                                       std::size_t budget) {
    if (period < 2 * bandwidth + 1)
        throw std::invalid_argument("enumerate_basis: requires T >= 2B+1");

    std::vector<BandedPeriodicPermutation> out;
    std::vector<int> d(period, 0);
    std::vector<char> used(period, 0);
    const int b = static_cast<int>(bandwidth);

    // Depth-first over displacement vectors, offsets scanned -B..B, so the
    // output is in lexicographic displacement order.
    auto rec = [&](auto&& self, std::size_t r) -> void {
        if (r == period) {
            if (out.size() >= budget)
                throw BudgetExceeded("enumerate_basis: more than " + std::to_string(budget) +
                                     " permutations");
            out.emplace_back(period, bandwidth, d);
            return;
        }
        for (int off = -b; off <= b; ++off) {
            const std::size_t target = mod_residue(static_cast<std::int64_t>(r) + off, period);
            if (used[target]) continue;
            used[target] = 1;
            d[r] = off;
            self(self, r + 1);
            used[target] = 0;
        }
        d[r] = 0;
    };
    rec(rec, 0);
    return out;
}

std::vector<PeriodicConicTerm> conic_decompose_periodic(const PeriodicBandedOperator& m) {
    if (!validate(m).ok())
        throw NotZeroExcess("conic_decompose_periodic: operator fails multiplier-class validation");

    const std::size_t t = m.period();
    const std::size_t b = m.bandwidth();
    const Matrix folded = fold(m);
    const PermutationCombo combo = conic_decompose(folded);

    std::vector<PeriodicConicTerm> out;
    out.reserve(combo.size());
    for (const auto& term : combo) {
        std::vector<int> disp(t, 0);
        for (std::size_t r = 0; r < t; ++r) {
            std::int64_t d = static_cast<std::int64_t>(mod_residue(
                static_cast<std::int64_t>(term.perm[r]) - static_cast<std::int64_t>(r), t));
            if (d > static_cast<std::int64_t>(b)) d -= static_cast<std::int64_t>(t);
            if (std::llabs(d) > static_cast<std::int64_t>(b))
                throw BandInfeasible(
                    "conic_decompose_periodic: folded permutation leaves the band");
            disp[r] = static_cast<int>(d);
        }
        out.push_back({term.weight, BandedPeriodicPermutation(t, b, std::move(disp))});
    }
    return out;
}

PeriodicBandedOperator conic_sum_periodic(const std::vector<PeriodicConicTerm>& terms,
                                          std::size_t period, std::size_t bandwidth) {
    auto acc = PeriodicBandedOperator::zero(period, bandwidth);
    for (const auto& t : terms) {
        if (t.perm.period() != period)
            throw DimensionMismatch("conic_sum_periodic: period mismatch");
        for (std::size_t r = 0; r < period; ++r) {
            acc.band_entry(r, 0) += t.weight;
            acc.band_entry(r, t.perm.displacement()[r]) -= t.weight;
        }
    }
    return acc;
}

double max_band_abs_diff(const PeriodicBandedOperator& a, const PeriodicBandedOperator& b) {
    if (a.period() != b.period())
        throw DimensionMismatch("max_band_abs_diff: period mismatch");
    const auto bw = static_cast<std::int64_t>(std::max(a.bandwidth(), b.bandwidth()));
    double m = 0.0;
    for (std::size_t r = 0; r < a.period(); ++r)
        for (std::int64_t d = -bw; d <= bw; ++d) {
            const auto i = static_cast<std::int64_t>(r);
            m = std::max(m, std::abs(a.entry(i, i + d) - b.entry(i, i + d)));
        }
    return m;
}

Signal apply(const PeriodicBandedOperator& m, const Signal& u) {
    if (u.is_zero()) return Signal::zero();
    const auto b = static_cast<std::int64_t>(m.bandwidth());
    const std::int64_t lo = u.start() - b;
    const std::int64_t hi = u.end() + b;
    std::vector<double> vals(static_cast<std::size_t>(hi - lo), 0.0);
    for (std::int64_t i = lo; i < hi; ++i) {
        double acc = 0.0;
        for (std::int64_t d = -b; d <= b; ++d) acc += m.entry(i, i + d) * u[i + d];
        vals[static_cast<std::size_t>(i - lo)] = acc;
    }
    return Signal(lo, std::move(vals));
}

namespace {

double complement_inner_product(const BandedPeriodicPermutation& p, const SequencePair& pair) {
    // <(I - P)v, w> = sum_k (v_k - v_{pi(k)}) w_k over the support of w.
    double acc = 0.0;
    for (std::int64_t k = pair.w.start(); k < pair.w.end(); ++k) {
        const double wk = pair.w[k];
        if (wk == 0.0) continue;
        acc += (pair.v[k] - pair.v[p.image(k)]) * wk;
    }
    return acc;
}

}  // namespace

PairMembership check_pair(const SequencePair& p,
                          const std::vector<BandedPeriodicPermutation>& basis, double tol) {
    PairMembership r;
    r.member = true;
    r.worst_value = 0.0;
    for (const auto& perm : basis) {
        const double s = complement_inner_product(perm, p);
        if (s < r.worst_value) {
            r.worst_value = s;
            if (s < -tol) {
                r.member = false;
                r.witness = perm;
            }
        }
    }
    return r;
}

PairMembership check_pair(const SequencePair& p, std::size_t period, std::size_t bandwidth,
                          double tol, std::size_t budget) {
    return check_pair(p, enumerate_basis(period, bandwidth, budget), tol);
}

std::optional<BandedPeriodicPermutation> violating_transposition(const SequencePair& p,
                                                                 std::size_t bandwidth) {
    if (bandwidth == 0 || (p.v.is_zero() && p.w.is_zero())) return std::nullopt;

    const std::int64_t lo =
        std::min(p.v.is_zero() ? p.w.start() : p.v.start(), p.w.is_zero() ? p.v.start() : p.w.start());
    const std::int64_t hi =
        std::max(p.v.is_zero() ? p.w.end() : p.v.end(), p.w.is_zero() ? p.v.end() : p.w.end()) - 1;
    const auto b = static_cast<std::int64_t>(bandwidth);

    for (std::int64_t k = lo - b; k <= hi + b; ++k) {
        for (std::int64_t delta = 1; delta <= b; ++delta) {
            const std::int64_t l = k + delta;
            if ((p.v[k] - p.v[l]) * (p.w[k] - p.w[l]) < 0.0) {
                // Period wide enough that the other lifted copies miss the
                // support, so the returned complement reproduces the violation.
                const std::size_t period = static_cast<std::size_t>(
                    std::max<std::int64_t>(2 * b + 1, hi - lo + b + 2));
                std::vector<int> disp(period, 0);
                disp[mod_residue(k, period)] = static_cast<int>(delta);
                disp[mod_residue(l, period)] = -static_cast<int>(delta);
                return BandedPeriodicPermutation(period, bandwidth, std::move(disp));
            }
        }
    }
    return std::nullopt;
}

}  // namespace ozf
