#include "ozf/hyperdominant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ozf/errors.hpp"

namespace ozf {

MatrixClassification classify(const Matrix& m, double tol) {
    if (!m.square()) throw DimensionMismatch("classify: matrix not square");
    const std::size_t n = m.rows();

    bool offdiag_nonpositive = true;
    bool entries_nonnegative = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && m(i, j) > 0.0) offdiag_nonpositive = false;
            if (m(i, j) < 0.0) entries_nonnegative = false;
        }
    }

    bool sums_nonnegative = true, sums_zero = true, sums_one = true;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row += m(i, j);
            col += m(j, i);
        }
        if (row < -tol || col < -tol) sums_nonnegative = false;
        if (std::abs(row) > tol || std::abs(col) > tol) sums_zero = false;
        if (std::abs(row - 1.0) > tol || std::abs(col - 1.0) > tol) sums_one = false;
    }

    MatrixClassification c;
    c.hyperdominant = offdiag_nonpositive && sums_nonnegative;
    c.zero_excess = offdiag_nonpositive && sums_zero;
    c.doubly_stochastic = entries_nonnegative && sums_one;
    return c;
}

Matrix augment_zero_excess(const Matrix& m, double tol) {
    if (!classify(m, tol).hyperdominant)
        throw NotHyperdominant("augment_zero_excess: input is not doubly hyperdominant");
    const std::size_t n = m.rows();
    Matrix out(n + 1, n + 1);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = m(i, j);
            row += m(i, j);
        }
        out(i, n) = -row;
        total += row;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += m(i, j);
        out(n, j) = -col;
    }
    out(n, n) = total;
    return out;
}

Matrix permutation_matrix(const std::vector<std::size_t>& perm) {
    Matrix p(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) p(i, perm[i]) = 1.0;
    return p;
}

Matrix combo_sum(const PermutationCombo& combo, std::size_t n) {
    Matrix acc(n, n);
    for (const auto& t : combo)
        for (std::size_t i = 0; i < n; ++i) acc(i, t.perm[i]) += t.weight;
    return acc;
}

Matrix combo_conic_sum(const PermutationCombo& combo, std::size_t n) {
    Matrix acc(n, n);
    for (const auto& t : combo) {
        for (std::size_t i = 0; i < n; ++i) {
            acc(i, i) += t.weight;
            acc(i, t.perm[i]) -= t.weight;
        }
    }
    return acc;
}

namespace {

constexpr double kSupportEps = 1e-12;

// Kuhn augmenting-path matching over the positive support of the residual.
// Row adjacency is ordered by descending residual entry (ties by column
// index) so the extraction order is deterministic.
struct SupportMatcher {
    const Matrix& r;
    std::size_t n;
    std::vector<std::vector<std::size_t>> adj;
    std::vector<std::size_t> row_match, col_match;
    std::vector<char> visited;

    explicit SupportMatcher(const Matrix& residual)
        : r(residual),
          n(residual.rows()),
          adj(n),
          row_match(n, n),
          col_match(n, n) {}

    void build() {
        for (std::size_t i = 0; i < n; ++i) {
            adj[i].clear();
            for (std::size_t j = 0; j < n; ++j)
                if (r(i, j) > kSupportEps) adj[i].push_back(j);
            std::stable_sort(adj[i].begin(), adj[i].end(), [&](std::size_t a, std::size_t b) {
                if (r(i, a) != r(i, b)) return r(i, a) > r(i, b);
                return a < b;
            });
        }
    }

    bool try_row(std::size_t i) {
        for (std::size_t j : adj[i]) {
            if (visited[j]) continue;
            visited[j] = 1;
            if (col_match[j] == n || try_row(col_match[j])) {
                row_match[i] = j;
                col_match[j] = i;
                return true;
            }
        }
        return false;
    }

    bool find_permutation(std::vector<std::size_t>* perm) {
        build();
        std::fill(row_match.begin(), row_match.end(), n);
        std::fill(col_match.begin(), col_match.end(), n);
        for (std::size_t i = 0; i < n; ++i) {
            visited.assign(n, 0);
            if (!try_row(i)) return false;
        }
        *perm = row_match;
        return true;
    }
};

double residual_mass(const Matrix& r) {
    double mass = 0.0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < r.cols(); ++j) row += std::abs(r(i, j));
        mass = std::max(mass, row);
    }
    return mass;
}

}  // namespace

PermutationCombo birkhoff_decompose(const Matrix& a, double tol) {
    if (!classify(a).doubly_stochastic)
        throw NotHyperdominant("birkhoff_decompose: input is not doubly stochastic");
    const std::size_t n = a.rows();

    Matrix residual = a;
    PermutationCombo combo;
    SupportMatcher matcher(residual);

    while (residual_mass(residual) > tol) {
        std::vector<std::size_t> perm;
        if (!matcher.find_permutation(&perm))
            throw DecompositionStalled(
                "birkhoff_decompose: no support permutation though residual mass remains");

        double theta = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) theta = std::min(theta, residual(i, perm[i]));
        for (std::size_t i = 0; i < n; ++i) {
            double& e = residual(i, perm[i]);
            e -= theta;
            if (e <= kSupportEps) e = 0.0;
        }
        combo.push_back({theta, std::move(perm)});
    }
    return combo;
}

PermutationCombo conic_decompose(const Matrix& m, double tol) {
    if (!m.square()) throw DimensionMismatch("conic_decompose: matrix not square");
    if (max_abs(m) == 0.0) return {};
    if (!classify(m).zero_excess)
        throw NotZeroExcess("conic_decompose: input is not zero-excess hyperdominant");

    const std::size_t n = m.rows();
    const double d = max_abs(m);

    // M = d (I - A) with A doubly stochastic, then Birkhoff on A.
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = (i == j ? 1.0 - m(i, j) / d : -m(i, j) / d);

    PermutationCombo combo = birkhoff_decompose(a, tol / std::max(1.0, d));
    PermutationCombo out;
    for (auto& t : combo) {
        bool identity = true;
        for (std::size_t i = 0; i < n; ++i)
            if (t.perm[i] != i) {
                identity = false;
                break;
            }
        if (identity) continue;  // contributes nothing to I - P terms
        out.push_back({d * t.weight, std::move(t.perm)});
    }
    return out;
}

double bilinear_form(const Matrix& m, const Signal& v, const Signal& w) {
    if (!m.square()) throw DimensionMismatch("bilinear_form: matrix not square");
    const auto n = static_cast<std::int64_t>(m.rows());
    for (const Signal* s : {&v, &w})
        if (!s->is_zero() && (s->start() < 0 || s->end() > n))
            throw DimensionMismatch("bilinear_form: signal support exceeds matrix dimension");

    double acc = 0.0;
    for (std::int64_t i = w.start(); i < w.end(); ++i) {
        const double wi = w[i];
        if (wi == 0.0) continue;
        double row = 0.0;
        for (std::int64_t j = v.start(); j < v.end(); ++j)
            row += m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * v[j];
        acc += wi * row;
    }
    return acc;
}

}  // namespace ozf
