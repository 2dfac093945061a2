#include "ozf/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ozf/errors.hpp"

namespace ozf {

namespace {

constexpr double kPivotEps = 1e-11;

// Tableau with one objective row at the bottom. Columns are
// [original | slack/surplus | artificial | rhs].
struct Tableau {
    std::size_t m = 0;       // constraint rows
    std::size_t cols = 0;    // total columns incl. rhs
    std::vector<double> t;   // (m+1) x cols, row-major
    std::vector<std::size_t> basis;       // basic column per row
    std::vector<char> allowed;            // columns eligible to enter

    double& at(std::size_t i, std::size_t j) { return t[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return t[i * cols + j]; }
    std::size_t rhs() const { return cols - 1; }
    std::size_t obj_row() const { return m; }

    void pivot(std::size_t r, std::size_t s) {
        const double inv = 1.0 / at(r, s);
        for (std::size_t j = 0; j < cols; ++j) at(r, j) *= inv;
        at(r, s) = 1.0;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == r) continue;
            const double f = at(i, s);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) at(i, j) -= f * at(r, j);
            at(i, s) = 0.0;
        }
        basis[r] = s;
    }
};

struct SimplexDriver {
    Tableau& tb;
    double tol;
    std::size_t max_iterations;
    std::size_t& iterations;
    bool& bland;
    std::size_t stall = 0;
    double last_obj = std::numeric_limits<double>::infinity();

    // Returns false when optimal, throws on unbounded handled by caller via
    // entering/leaving result; here: true = pivoted, false = optimal.
    bool step(bool* unbounded) {
        const std::size_t nvar = tb.cols - 1;
        std::size_t enter = nvar;
        if (!bland) {
            double best = -tol;
            for (std::size_t j = 0; j < nvar; ++j) {
                if (!tb.allowed[j]) continue;
                const double rc = tb.at(tb.obj_row(), j);
                if (rc < best) {
                    best = rc;
                    enter = j;
                }
            }
        } else {
            for (std::size_t j = 0; j < nvar; ++j) {
                if (!tb.allowed[j]) continue;
                if (tb.at(tb.obj_row(), j) < -tol) {
                    enter = j;
                    break;
                }
            }
        }
        if (enter == nvar) return false;  // optimal

        std::size_t leave = tb.m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tb.m; ++i) {
            const double aij = tb.at(i, enter);
            if (aij <= kPivotEps) continue;
            const double ratio = tb.at(i, tb.rhs()) / aij;
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && (leave == tb.m || tb.basis[i] < tb.basis[leave]))) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave == tb.m) {
            *unbounded = true;
            return false;
        }

        tb.pivot(leave, enter);
        ++iterations;
        if (iterations > max_iterations)
            throw LpNumericalFailure("simplex: iteration cap exceeded");

        const double obj = -tb.at(tb.obj_row(), tb.rhs());
        if (obj < last_obj - 1e-12) {
            stall = 0;
            last_obj = obj;
        } else if (++stall > tb.m + tb.cols) {
            bland = true;  // anti-cycling fallback
        }
        return true;
    }
};

}  // namespace

LpResult solve_lp(const LpProblem& p, const LpOptions& opts) {
    const std::size_t n = p.n;
    const std::size_t m = p.rows.size();
    if (p.c.size() != n) throw DimensionMismatch("solve_lp: objective length != n");
    for (const auto& r : p.rows)
        if (r.a.size() != n) throw DimensionMismatch("solve_lp: row length != n");

    const double tol = opts.tol;

    // Normalize rows to nonnegative rhs; remember flips so Farkas
    // multipliers can be reported against the original rows.
    std::vector<double> sign(m, 1.0);
    std::vector<LpRelation> rel(m);
    for (std::size_t i = 0; i < m; ++i) {
        rel[i] = p.rows[i].rel;
        if (p.rows[i].b < 0.0) {
            sign[i] = -1.0;
            rel[i] = rel[i] == LpRelation::le   ? LpRelation::ge
                     : rel[i] == LpRelation::ge ? LpRelation::le
                                                : LpRelation::eq;
        }
    }

    std::size_t n_slack = 0, n_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (rel[i] != LpRelation::eq) ++n_slack;
        if (rel[i] != LpRelation::le) ++n_art;
    }

    Tableau tb;
    tb.m = m;
    tb.cols = n + n_slack + n_art + 1;
    tb.t.assign((m + 1) * tb.cols, 0.0);
    tb.basis.assign(m, 0);
    tb.allowed.assign(tb.cols - 1, 1);

    std::vector<std::size_t> slack_col(m, tb.cols), art_col(m, tb.cols);
    {
        std::size_t next = n;
        for (std::size_t i = 0; i < m; ++i)
            if (rel[i] != LpRelation::eq) slack_col[i] = next++;
        for (std::size_t i = 0; i < m; ++i)
            if (rel[i] != LpRelation::le) art_col[i] = next++;
    }

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) tb.at(i, j) = sign[i] * p.rows[i].a[j];
        tb.at(i, tb.rhs()) = sign[i] * p.rows[i].b;
        if (rel[i] == LpRelation::le) {
            tb.at(i, slack_col[i]) = 1.0;
            tb.basis[i] = slack_col[i];
        } else if (rel[i] == LpRelation::ge) {
            tb.at(i, slack_col[i]) = -1.0;
            tb.at(i, art_col[i]) = 1.0;
            tb.basis[i] = art_col[i];
        } else {
            tb.at(i, art_col[i]) = 1.0;
            tb.basis[i] = art_col[i];
        }
    }

    LpResult res;
    const std::size_t cap =
        opts.max_iterations ? opts.max_iterations : 200 + 50 * (m + tb.cols);

    // Phase 1: minimize the artificial mass.
    bool need_phase1 = n_art > 0;
    if (need_phase1) {
        for (std::size_t i = 0; i < m; ++i) {
            if (art_col[i] == tb.cols) continue;
            for (std::size_t j = 0; j < tb.cols; ++j)
                if (j != art_col[i]) tb.at(tb.obj_row(), j) -= tb.at(i, j);
        }
        bool unbounded = false;
        SimplexDriver drv{tb, tol, cap, res.iterations, res.bland_engaged};
        while (drv.step(&unbounded)) {
        }
        if (unbounded) throw LpNumericalFailure("simplex: phase 1 unbounded");

        const double art_mass = -tb.at(tb.obj_row(), tb.rhs());
        if (art_mass > 10.0 * tol) {
            res.status = LpStatus::infeasible;
            // Phase-1 duals read off the identity columns: y_i = -rc(slack),
            // +rc(surplus), 1 - rc(artificial); then mapped back through the
            // row sign flips.
            res.farkas.assign(m, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                double y;
                if (rel[i] == LpRelation::le)
                    y = -tb.at(tb.obj_row(), slack_col[i]);
                else if (rel[i] == LpRelation::ge)
                    y = tb.at(tb.obj_row(), slack_col[i]);
                else
                    y = 1.0 - tb.at(tb.obj_row(), art_col[i]);
                res.farkas[i] = sign[i] * y;
            }
            return res;
        }

        // Drive any residual (degenerate) artificials out of the basis.
        for (std::size_t i = 0; i < m; ++i) {
            if (art_col[i] == tb.cols) continue;
            const std::size_t col = art_col[i];
            auto it = std::find(tb.basis.begin(), tb.basis.end(), col);
            if (it == tb.basis.end()) continue;
            const std::size_t row = static_cast<std::size_t>(it - tb.basis.begin());
            std::size_t s = tb.cols;
            for (std::size_t j = 0; j < n + n_slack; ++j) {
                if (std::abs(tb.at(row, j)) > 1e-8) {
                    s = j;
                    break;
                }
            }
            if (s != tb.cols) tb.pivot(row, s);
            // else: redundant row; the artificial stays basic at zero.
        }
        for (std::size_t i = 0; i < m; ++i)
            if (art_col[i] != tb.cols) tb.allowed[art_col[i]] = 0;
    }

    // Phase 2.
    for (std::size_t j = 0; j < tb.cols; ++j) tb.at(tb.obj_row(), j) = 0.0;
    for (std::size_t j = 0; j < n; ++j) tb.at(tb.obj_row(), j) = p.c[j];
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t bj = tb.basis[i];
        const double cb = bj < n ? p.c[bj] : 0.0;
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j < tb.cols; ++j) tb.at(tb.obj_row(), j) -= cb * tb.at(i, j);
    }

    bool unbounded = false;
    SimplexDriver drv{tb, tol, cap, res.iterations, res.bland_engaged};
    while (drv.step(&unbounded)) {
    }
    if (unbounded) {
        res.status = LpStatus::unbounded;
        return res;
    }

    res.status = LpStatus::optimal;
    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.at(i, tb.rhs());
    res.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) res.objective += p.c[j] * res.x[j];
    return res;
}

bool verify_farkas(const LpProblem& p, const std::vector<double>& y, double tol) {
    if (y.size() != p.rows.size()) return false;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (p.rows[i].rel == LpRelation::le && y[i] > tol) return false;
        if (p.rows[i].rel == LpRelation::ge && y[i] < -tol) return false;
    }
    double yb = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) yb += y[i] * p.rows[i].b;
    if (yb <= tol) return false;
    for (std::size_t j = 0; j < p.n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * p.rows[i].a[j];
        if (s > tol * std::max(1.0, std::abs(yb))) return false;
    }
    return true;
}

}  // namespace ozf
