#pragma once

#include <vector>

#include "ozf/matrix.hpp"

namespace ozf {

/// Eigendecomposition of a symmetric matrix: A = V diag(values) V^T,
/// column j of `vectors` is the eigenvector for values[j].
struct SymmetricEigen {
    std::vector<double> values;
    Matrix vectors;
};

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius mass drops below
/// tol * scale. Input must be square; small asymmetries are symmetrized away.
SymmetricEigen jacobi_eigendecompose(const Matrix& a, double tol = 1e-12,
                                     std::size_t max_sweeps = 100);

struct MaxEigenPair {
    double value = 0.0;
    std::vector<double> vector;
};

/// Largest eigenvalue and its (sign-normalized) eigenvector.
MaxEigenPair max_eigenpair(const Matrix& a, double tol = 1e-12);

double max_eigenvalue(const Matrix& a, double tol = 1e-12);

}  // namespace ozf
