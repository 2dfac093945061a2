#pragma once

#include <cstdint>
#include <vector>

namespace ozf {

/// Finitely supported real sequence over the integers. Entries outside
/// [start, start+size) are implicitly zero. Construction canonicalizes:
/// leading/trailing exact zeros are trimmed and the zero signal is the
/// empty list with start 0. Immutable after construction.
class Signal {
  public:
    Signal() = default;
    Signal(std::int64_t start, std::vector<double> values);

    static Signal zero() { return Signal(); }
    static Signal impulse(std::int64_t at, double amplitude = 1.0);

    bool is_zero() const { return values_.empty(); }
    std::int64_t start() const { return start_; }
    /// One past the last support index (start for the zero signal).
    std::int64_t end() const { return start_ + static_cast<std::int64_t>(values_.size()); }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    /// Value at index k; zero outside the stored support.
    double operator[](std::int64_t k) const;

    double norm_sq() const;
    double norm() const;

    friend bool operator==(const Signal&, const Signal&) = default;

  private:
    std::int64_t start_ = 0;
    std::vector<double> values_;
};

/// A pair of sequences (v, w), e.g. the input and output of a nonlinearity.
struct SequencePair {
    Signal v;
    Signal w;
};

double inner_product(const Signal& u, const Signal& w);

/// Rightward shift: the value at k moves to k + tau.
Signal shift(const Signal& u, std::int64_t tau);

/// Keep entries with index <= tau, zero the rest.
Signal truncate(const Signal& u, std::int64_t tau);

/// Keep entries with a <= index <= b (requires a <= b).
Signal truncate_window(const Signal& u, std::int64_t a, std::int64_t b);

Signal add(const Signal& a, const Signal& b);
Signal scale(const Signal& a, double c);

/// True iff v_i < v_j implies w_i <= w_j over all index pairs, the implicit
/// zero tail included. Since every implicit sample is (0, 0), appending one
/// synthetic (0, 0) to the support samples gives an equivalent finite check.
bool is_similarly_ordered(const SequencePair& p);

/// True iff v_k * w_k >= 0 at every index.
bool is_unbiased(const SequencePair& p);

}  // namespace ozf
