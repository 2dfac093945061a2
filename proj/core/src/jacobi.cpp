#include "ozf/jacobi.hpp"

#include <cmath>

#include "ozf/errors.hpp"

namespace ozf {

namespace {

double off_diagonal_norm_sq(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
    return s;
}

}  // namespace

SymmetricEigen jacobi_eigendecompose(const Matrix& input, double tol, std::size_t max_sweeps) {
    if (!input.square()) throw DimensionMismatch("jacobi: matrix not square");
    const std::size_t n = input.rows();
    Matrix a = symmetric_part(input);
    Matrix v = Matrix::identity(n);

    if (n <= 1) {
        SymmetricEigen r;
        r.values.assign(n, n == 1 ? a(0, 0) : 0.0);
        r.vectors = v;
        return r;
    }

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) scale = 1.0;
    const double threshold = tol * tol * scale * scale;

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm_sq(a) <= threshold) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= tol * scale * 1e-4) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p), arq = a(r, q);
                        a(r, p) = arp - s * (arq + tau * arp);
                        a(p, r) = a(r, p);
                        a(r, q) = arq + s * (arp - tau * arq);
                        a(q, r) = a(r, q);
                    }
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    SymmetricEigen r;
    r.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.values[i] = a(i, i);
    r.vectors = std::move(v);
    return r;
}

MaxEigenPair max_eigenpair(const Matrix& a, double tol) {
    const SymmetricEigen e = jacobi_eigendecompose(a, tol);
    std::size_t best = 0;
    for (std::size_t i = 1; i < e.values.size(); ++i)
        if (e.values[i] > e.values[best]) best = i;

    MaxEigenPair r;
    r.value = e.values.empty() ? 0.0 : e.values[best];
    r.vector.resize(e.values.size());
    for (std::size_t i = 0; i < r.vector.size(); ++i) r.vector[i] = e.vectors(i, best);

    // Fix the sign so reports are reproducible: largest-magnitude entry positive.
    std::size_t arg = 0;
    for (std::size_t i = 1; i < r.vector.size(); ++i)
        if (std::abs(r.vector[i]) > std::abs(r.vector[arg])) arg = i;
    if (!r.vector.empty() && r.vector[arg] < 0.0)
        for (double& x : r.vector) x = -x;
    return r;
}

double max_eigenvalue(const Matrix& a, double tol) {
    const SymmetricEigen e = jacobi_eigendecompose(a, tol);
    double m = e.values.empty() ? 0.0 : e.values[0];
    for (double x : e.values) m = std::max(m, x);
    return m;
}

}  // namespace ozf
