#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ozf/hyperdominant.hpp"
#include "ozf/matrix.hpp"
#include "ozf/signal.hpp"

namespace ozf {

/// Doubly infinite operator that is T-periodic and B-banded, stored as one
/// period of band rows: band(r)[B + d] is the entry at (r, r + d) for
/// d in [-B, B]; entry (i + T, j + T) equals entry (i, j).
class PeriodicBandedOperator {
  public:
    PeriodicBandedOperator(std::size_t period, std::size_t bandwidth,
                           std::vector<std::vector<double>> rows);

    static PeriodicBandedOperator zero(std::size_t period, std::size_t bandwidth);

    std::size_t period() const { return period_; }
    std::size_t bandwidth() const { return bandwidth_; }
    const std::vector<double>& band(std::size_t residue) const { return rows_[residue]; }

    double& band_entry(std::size_t residue, std::int64_t offset);
    double entry(std::int64_t i, std::int64_t j) const;

    friend bool operator==(const PeriodicBandedOperator&, const PeriodicBandedOperator&) = default;

  private:
    std::size_t period_;
    std::size_t bandwidth_;
    std::vector<std::vector<double>> rows_;
};

/// Membership diagnostics for the periodic banded multiplier class
/// (nonpositive off-diagonal band, zero row and column excess, T >= 2B+1).
struct PeriodicValidation {
    bool period_band_ok = false;
    std::vector<std::pair<std::size_t, std::int64_t>> sign_violations;  // (residue, offset)
    std::vector<double> row_sums;  // per residue
    std::vector<double> col_sums;  // per residue class, with wrap
    bool ok(double tol = 1e-9) const;
};

PeriodicValidation validate(const PeriodicBandedOperator& m);

/// Wrap the band of each residue row into one period: out(r, c mod T)
/// accumulates every band entry (r, c). With T >= 2B+1 no two band entries
/// collide, and valid operators fold to zero-excess hyperdominant matrices.
Matrix fold(const PeriodicBandedOperator& m);

/// Inverse of fold. Every nonzero (r, c) of x must admit a congruent in-band
/// column c' = c (mod T), |r - c'| <= B; otherwise throws BandInfeasible.
PeriodicBandedOperator unfold(const Matrix& x, std::size_t period, std::size_t bandwidth);

/// Permutation pi of the integers with pi(k + T) = pi(k) + T and
/// |pi(k) - k| <= B, stored as per-residue displacements d(r) = pi(r) - r.
class BandedPeriodicPermutation {
  public:
    BandedPeriodicPermutation(std::size_t period, std::size_t bandwidth,
                              std::vector<int> displacement);

    static BandedPeriodicPermutation identity(std::size_t period, std::size_t bandwidth);

    std::size_t period() const { return period_; }
    std::size_t bandwidth() const { return bandwidth_; }
    const std::vector<int>& displacement() const { return displacement_; }

    std::int64_t image(std::int64_t k) const;
    bool is_identity() const;

    /// I - P as a periodic banded operator.
    PeriodicBandedOperator complement() const;

    friend bool operator==(const BandedPeriodicPermutation&,
                           const BandedPeriodicPermutation&) = default;

  private:
    std::size_t period_;
    std::size_t bandwidth_;
    std::vector<int> displacement_;
};

/// All banded periodic permutations for (T, B), identity included, in
/// lexicographic displacement order. Throws BudgetExceeded past `budget`.
std::vector<BandedPeriodicPermutation> enumerate_basis(std::size_t period, std::size_t bandwidth,
                                                       std::size_t budget = 1'000'000);

struct PeriodicConicTerm {
    double weight = 0.0;
    BandedPeriodicPermutation perm;
};

/// M = sum_i alpha_i (I - P_i) over banded periodic permutations, computed by
/// folding, decomposing the folded matrix conically and unfolding each term.
std::vector<PeriodicConicTerm> conic_decompose_periodic(const PeriodicBandedOperator& m);

/// Sum of weight * (I - P) as an operator with the given period/bandwidth.
PeriodicBandedOperator conic_sum_periodic(const std::vector<PeriodicConicTerm>& terms,
                                          std::size_t period, std::size_t bandwidth);

double max_band_abs_diff(const PeriodicBandedOperator& a, const PeriodicBandedOperator& b);

/// Banded matrix-vector product; the result support extends the input's by B.
Signal apply(const PeriodicBandedOperator& m, const Signal& u);

struct PairMembership {
    bool member = false;
    double worst_value = 0.0;
    std::optional<BandedPeriodicPermutation> witness;  // most violating, when rejected
};

/// Tests <(I - P)v, w> >= -tol for every permutation in the basis.
PairMembership check_pair(const SequencePair& p,
                          const std::vector<BandedPeriodicPermutation>& basis,
                          double tol = 1e-12);
PairMembership check_pair(const SequencePair& p, std::size_t period, std::size_t bandwidth,
                          double tol = 1e-12, std::size_t budget = 1'000'000);

/// Searches index pairs within distance B for (v_k - v_l)(w_k - w_l) < 0 and
/// returns the lifted transposition, with the period chosen large enough that
/// only the violating pair meets the support.
std::optional<BandedPeriodicPermutation> violating_transposition(const SequencePair& p,
                                                                 std::size_t bandwidth);

}  // namespace ozf
