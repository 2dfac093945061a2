#pragma once

#include <cstddef>
#include <vector>

#include "ozf/matrix.hpp"
#include "ozf/signal.hpp"

namespace ozf {

struct MatrixClassification {
    bool hyperdominant = false;      // off-diagonals <= 0, row/col sums >= 0
    bool zero_excess = false;        // hyperdominant with all row/col sums == 0
    bool doubly_stochastic = false;  // nonnegative entries, row/col sums == 1
};

/// Off-diagonal sign checks are exact; sum checks use `tol`.
MatrixClassification classify(const Matrix& m, double tol = 1e-9);

/// Border a hyperdominant matrix with one extra row and column so that every
/// row and column sums to zero; deleting the last row/column recovers the
/// input. Throws NotHyperdominant.
Matrix augment_zero_excess(const Matrix& m, double tol = 1e-9);

/// A permutation stored row-wise: row i carries a one in column perm[i].
struct WeightedPermutation {
    double weight = 0.0;
    std::vector<std::size_t> perm;
};

using PermutationCombo = std::vector<WeightedPermutation>;

Matrix permutation_matrix(const std::vector<std::size_t>& perm);

/// Sum of weight * P over the combo.
Matrix combo_sum(const PermutationCombo& combo, std::size_t n);

/// Sum of weight * (I - P) over the combo.
Matrix combo_conic_sum(const PermutationCombo& combo, std::size_t n);

/// Greedy Birkhoff-von Neumann decomposition of a doubly stochastic matrix:
/// repeatedly matches a permutation inside the positive support (augmenting
/// paths, rows scanned in order, columns by descending residual entry),
/// subtracts the minimal matched entry and repeats. Weights sum to one and
/// at most (n-1)^2 + 1 terms appear. Throws DecompositionStalled when no
/// support permutation exists while residual mass remains.
PermutationCombo birkhoff_decompose(const Matrix& a, double tol = 1e-8);

/// Conic decomposition M = sum_i beta_i (I - P_i) of a nonzero zero-excess
/// hyperdominant matrix; the identity permutation never appears in the
/// output. The zero matrix yields an empty combo. Throws NotZeroExcess.
PermutationCombo conic_decompose(const Matrix& m, double tol = 1e-8);

/// w' M v with signal indices read as matrix indices; the supports of both
/// signals must fit inside [0, n). Throws DimensionMismatch.
double bilinear_form(const Matrix& m, const Signal& v, const Signal& w);

}  // namespace ozf
