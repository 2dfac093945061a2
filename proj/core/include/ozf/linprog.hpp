#pragma once

#include <cstddef>
#include <vector>

namespace ozf {

enum class LpRelation { le, eq, ge };

struct LpRow {
    std::vector<double> a;
    LpRelation rel = LpRelation::le;
    double b = 0.0;
};

/// min c'x  subject to  a_i'x (rel_i) b_i,  x >= 0.
struct LpProblem {
    std::size_t n = 0;  // number of variables
    std::vector<double> c;
    std::vector<LpRow> rows;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::optimal;
    std::vector<double> x;
    double objective = 0.0;
    /// For infeasible problems: row multipliers y with y_i <= 0 on `le`
    /// rows, y_i >= 0 on `ge` rows, sum_i y_i a_i <= 0 componentwise and
    /// sum_i y_i b_i > 0 (a certificate that no feasible point exists).
    std::vector<double> farkas;
    std::size_t iterations = 0;
    bool bland_engaged = false;
};

struct LpOptions {
    double tol = 1e-9;
    std::size_t max_iterations = 0;  // 0 = automatic from problem size
};

/// Dense two-phase tableau simplex. Dantzig pricing with a Bland's-rule
/// fallback when the objective stalls; throws LpNumericalFailure if the
/// iteration cap is hit even under Bland's rule.
LpResult solve_lp(const LpProblem& p, const LpOptions& opts = {});

/// Check a Farkas certificate against the problem data.
bool verify_farkas(const LpProblem& p, const std::vector<double>& y, double tol = 1e-7);

}  // namespace ozf
