#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ozf/hyperdominant.hpp"
#include "ozf/matrix.hpp"
#include "ozf/signal.hpp"

namespace ozf::testutil {

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        std::uniform_int_distribution<std::size_t> d(0, i - 1);
        std::swap(p[i - 1], p[d(rng)]);
    }
    return p;
}

/// Convex combination of at most `terms` random permutation matrices.
inline Matrix random_doubly_stochastic(std::mt19937_64& rng, std::size_t n, std::size_t terms) {
    std::uniform_real_distribution<double> wdist(0.1, 1.0);
    std::vector<double> w(terms);
    double total = 0.0;
    for (double& x : w) {
        x = wdist(rng);
        total += x;
    }
    Matrix a(n, n);
    for (double x : w) {
        const auto p = random_permutation(rng, n);
        for (std::size_t i = 0; i < n; ++i) a(i, p[i]) += x / total;
    }
    return a;
}

/// Random doubly hyperdominant matrix: nonpositive off-diagonals plus
/// diagonals large enough for nonnegative row and column sums.
inline Matrix random_hyperdominant(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> mag(0.0, 1.0);
    std::bernoulli_distribution fill(0.6);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && fill(rng)) m(i, j) = -mag(rng);

    std::vector<double> row_need(n, 0.0), col_need(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            row_need[i] -= m(i, j);
            col_need[j] -= m(i, j);
        }
    for (std::size_t i = 0; i < n; ++i) m(i, i) = std::max(row_need[i], col_need[i]) + mag(rng);
    return m;
}

/// Random zero-excess hyperdominant matrix as a conic sum of (I - P) terms.
inline Matrix random_zero_excess(std::mt19937_64& rng, std::size_t n, std::size_t max_terms = 4) {
    std::uniform_real_distribution<double> mag(0.1, 1.1);
    std::uniform_int_distribution<std::size_t> terms(1, max_terms);
    Matrix acc(n, n);
    const std::size_t t = terms(rng);
    for (std::size_t k = 0; k < t; ++k) {
        const double beta = mag(rng);
        const auto p = random_permutation(rng, n);
        for (std::size_t i = 0; i < n; ++i) {
            acc(i, i) += beta;
            acc(i, p[i]) -= beta;
        }
    }
    return acc;
}

/// All-pairs similar-ordering check over a wide index window; independent of
/// the production implementation.
inline bool brute_force_similarly_ordered(const SequencePair& p, std::int64_t pad = 6) {
    std::int64_t lo = 0, hi = 0;
    if (!p.v.is_zero() || !p.w.is_zero()) {
        lo = std::min(p.v.is_zero() ? p.w.start() : p.v.start(),
                      p.w.is_zero() ? p.v.start() : p.w.start());
        hi = std::max(p.v.is_zero() ? p.w.end() : p.v.end(),
                      p.w.is_zero() ? p.v.end() : p.w.end());
    }
    std::vector<std::pair<double, double>> s;
    for (std::int64_t k = lo - pad; k < hi + pad; ++k) s.emplace_back(p.v[k], p.w[k]);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (s[i].first < s[j].first && s[i].second > s[j].second) return false;
    return true;
}

inline Signal random_signal(std::mt19937_64& rng, std::int64_t start_lo, std::int64_t start_hi,
                            std::size_t max_len, double amplitude = 2.0) {
    std::uniform_int_distribution<std::int64_t> sdist(start_lo, start_hi);
    std::uniform_int_distribution<std::size_t> ldist(1, max_len);
    std::uniform_real_distribution<double> vdist(-amplitude, amplitude);
    std::vector<double> vals(ldist(rng));
    for (double& x : vals) x = vdist(rng);
    return Signal(sdist(rng), std::move(vals));
}

}  // namespace ozf::testutil
