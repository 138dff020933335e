#pragma once

#include <cstddef>
#include <vector>

namespace bpve {

namespace detail {

/// Kahan compensated accumulator. Long probability sums and total-variation
/// sums need the compensation to stay near 1e-15 absolute error.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

} // namespace detail

/**
 * Probability mass function on {0,1,...,M} with an explicit truncation budget.
 *
 * Mass that a capped operation pushed beyond M is recorded in lost_mass and
 * never renormalized away, so every downstream quantity can be reported with
 * an honest error bar. Generating-function evaluation charges the lost mass
 * to the top bin M (pessimistic for s<1 but keeps the total mass at one).
 *
 * Invariants (checked on construction): entries in [0,1], lost_mass >= 0,
 * sum(probs) + lost_mass == 1 within 1e-9.
 */
class Pmf {
  public:
    /// Point mass at 0.
    Pmf();

    /// probs[k] = P(X = k); throws std::invalid_argument on invariant violation.
    explicit Pmf(std::vector<double> probs, double lost_mass = 0.0);

    static Pmf point_mass(std::size_t k);

    const std::vector<double>& probs() const { return probs_; }
    double lost_mass() const { return lost_; }

    /// Highest representable value M (top of the support range).
    std::size_t max_value() const { return probs_.size() - 1; }

    /// P(X = k); 0 beyond the stored support.
    double operator[](std::size_t k) const {
        return k < probs_.size() ? probs_[k] : 0.0;
    }

    /// Sum of stored entries (excludes lost_mass).
    double mass() const;

    /// First moment of the stored entries (lost mass contributes nothing).
    double mean() const;

  private:
    std::vector<double> probs_;
    double lost_;
};

/// Generating function E s^X = sum_k probs[k] s^k + lost_mass * s^M,
/// evaluated by Horner's rule. Requires 0 <= s <= 1.
double eval_pgf(const Pmf& law, double s);

/// k-th factorial moment sum_j j(j-1)...(j-k+1) probs[j] of the stored
/// entries. Requires k >= 1; returns 0 when the support lies below k.
double factorial_moment(const Pmf& law, int k);

/// Total variation distance (1/2) sum_k |p[k] - q[k]| over the union of the
/// stored supports. Lost mass is not folded in; see tv_lost_correction.
double tv_distance(const Pmf& p, const Pmf& q);

/// Upper-bound correction (lost_p + lost_q)/2 for mass beyond both supports,
/// reported separately from tv_distance by convention.
double tv_lost_correction(const Pmf& p, const Pmf& q);

} // namespace bpve
