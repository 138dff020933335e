#pragma once

#include "bpve/pmf.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace bpve {

/**
 * Yaglom limit of the conditioned branching process: geometric on {1,2,...}
 * with success probability p = 2/(2+nu), i.e. P(V=k) = (1-p)^(k-1) p.
 * nu = 0 degenerates to the point mass at 1. cap = 0 picks the truncation
 * automatically so the tail (kept in lost_mass) is below 1e-15.
 */
Pmf geometric_limit(double nu, std::size_t cap = 0);

/**
 * Normalized immigration moment limits lambda_k, either a finite list
 * (zero from the last stored entry onward) or generator-backed with a
 * declared bound on limsup lambda_k^(1/k).
 */
class LambdaSequence {
  public:
    /// Finite mode. A trailing zero is appended when missing so the stored
    /// list always ends with the entry that switches the tail off.
    static LambdaSequence finite(std::vector<double> values);

    /// Generator mode; growth_limsup documents a bound on limsup
    /// lambda_k^(1/k) (must be <= 1 for the limit law to exist).
    static LambdaSequence generated(std::function<double(int)> gen,
                                    double growth_limsup);

    double at(int k) const; // k >= 1
    bool finite_mode() const { return finite_; }
    const std::vector<double>& stored() const; // finite mode only
    double growth_certificate() const { return growth_; }

  private:
    LambdaSequence() = default;
    bool finite_ = true;
    std::vector<double> values_;
    std::function<double(int)> gen_;
    double growth_ = 0.0;
};

/// Immigration size limits q_j = lim P(eps_n = j)/d_n; values[j-1] = q_j.
struct QSequence {
    std::vector<double> values;
};

/**
 * Limit generating function of the process with immigration,
 *
 *   f_Y(s) = exp{ -sum_k (2^k lambda_k / nu^k) T_k(s) },
 *   T_k(s) = log(1 + nu(1-s)/2) + sum_{i=1}^{k-1} (-1)^i nu^i (1-s)^i / (i 2^i).
 *
 * T_k is the k-th log tail, |T_k(s)| <= (nu(1-s)/2)^k / k, so in generator
 * mode the k-sum stops once lambda_k (1-s)^k / k < 1e-12; in finite mode it
 * is exact. Requires nu > 0 (domain error otherwise) and s in [0,1).
 */
double fY_closed_form(const LambdaSequence& lambda, double nu, double s);

/// lambda_k = sum_{j>=k} C(j,k) q_j. Materializes max(K, J+1) entries so the
/// stored list always reaches the zero tail.
LambdaSequence lambda_from_q(const QSequence& q, int K);

/// Binomial inversion q_j = sum_{k>=j} (-1)^(k-j) C(k,j) lambda_k
/// (finite mode only). Entries below -1e-9 raise a domain error; smaller
/// negative rounding dust is clamped to zero.
QSequence q_from_lambda(const LambdaSequence& lambda);

/**
 * Compound-Poisson representation f_Y(s) = exp{ sum_{n>=1} A_n (s^n - 1) }
 * with
 *   A_n = (nu/(2+nu))^n / n * sum_j q_j [ (1+2/nu)^(min(j,n)) - 1 ].
 *
 * a0 = sum_{n>=1} A_n is computed in closed form: past the q support the
 * summand is geometric over n and the tail telescopes into log(1 + nu/2).
 */
struct CompoundPoissonLaw {
    double a0 = 0.0;            // full rate sum_{n>=1} A_n
    std::vector<double> a;      // a[n-1] = A_n for n = 1..N
    double tail_bound = 0.0;    // a0 - sum of stored entries
    double nu = 0.0;
};

/// Smallest N whose dropped tail sum_{n>N} A_n is provably below tol.
std::size_t cp_truncation(const QSequence& q, double nu, double tol = 1e-12);

CompoundPoissonLaw A_coefficients(const QSequence& q, double nu,
                                  std::size_t N);

/// B(n,j) = (nu/(2+nu))^n / n * [ (1+2/nu)^(min(n,j)) - 1 ]; A_n is the
/// q-weighted sum of these. For j >= n the stable form (1 - r^n)/n is used.
double B_closed_form(std::int64_t n, std::int64_t j, double nu);

/// pgf exp{ sum_n A_n (s^n - 1) } of the stored coefficients; the dropped
/// tail shifts the value by at most tail_bound in the exponent.
double cp_pgf(const CompoundPoissonLaw& law, double s);

/// pmf of the compound-Poisson law by the standard recursion
/// p_0 = exp(-a0), m p_m = sum_{n<=min(m,N)} n A_n p_{m-n}.
Pmf cp_pmf(const CompoundPoissonLaw& law, std::size_t cap);

/// Negative binomial limit for the single-lambda case: number of failures
/// with r = 2 lambda1/nu and p = 2/(2+nu);
/// pmf(m) = C(m+r-1, m) p^r (1-p)^m on {0,1,...}.
Pmf negbin_limit(double lambda1, double nu, std::size_t cap);

/// Stirling numbers, exact 64-bit integers; std::overflow_error when the
/// value (or an intermediate on its recurrence path) leaves the range.
/// Requires 0 <= i <= k <= 64.
std::int64_t stirling2(int k, int i);          // partitions {k} into i blocks
std::int64_t stirling1_unsigned(int k, int i); // permutations of k with i cycles

} // namespace bpve
