#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ozf/matrix.hpp"
#include "ozf/signal.hpp"

namespace ozf {

/// Causal SISO LTI plant given as a rational transfer function in the delay
/// variable: G(z) = (b0 + b1 z^-1 + ... + bm z^-m) / (a0 + a1 z^-1 + ... + an z^-n),
/// with a0 != 0. Bounded on one-sided square-summable inputs iff all poles lie
/// strictly inside the unit circle (see is_stable).
class RationalPlant {
  public:
    RationalPlant(std::vector<double> num, std::vector<double> den);

    static RationalPlant constant(double gain) { return RationalPlant({gain}, {1.0}); }
    static RationalPlant delay() { return RationalPlant({0.0, 1.0}, {1.0}); }

    const std::vector<double>& num() const { return num_; }
    const std::vector<double>& den() const { return den_; }

    /// G(e^{j omega}); throws if the denominator is within 1e-12 of zero there.
    std::complex<double> frequency_response(double omega) const;

    /// First n impulse-response coefficients g0..g_{n-1} by long division.
    std::vector<double> impulse_response(std::size_t n) const;

    /// Direct feedthrough g0 = b0 / a0.
    double feedthrough() const { return num_.empty() ? 0.0 : num_[0] / den_[0]; }

    /// Argument-principle test: winds a(e^{j theta}) on an adaptively refined
    /// grid and accepts iff the winding number equals the full denominator
    /// degree, i.e. every pole is strictly inside the unit circle. Throws
    /// InconclusiveWinding when the curve passes within 1e-10 of the origin.
    bool is_stable(std::size_t grid_points = std::size_t{1} << 14) const;

  private:
    std::vector<double> num_;
    std::vector<double> den_;
};

/// Finite window of the Toeplitz (convolution) matrix of a plant: an H x H
/// lower-triangular matrix with entry (i, j) = g_{i-j}.
struct ToeplitzTruncation {
    std::size_t horizon = 0;
    Matrix entries;
};

ToeplitzTruncation toeplitz_truncation(const RationalPlant& g, std::size_t horizon);

/// Causal filtering of a one-sided input: output samples on [0, horizon).
/// The input must be supported on nonnegative indices.
Signal apply(const RationalPlant& g, const Signal& u, std::size_t horizon);

}  // namespace ozf
