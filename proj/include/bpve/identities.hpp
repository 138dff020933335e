#pragma once

#include "bpve/environment.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace bpve {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(n, k) in exact integer arithmetic; 0 outside 0 <= k <= n.
Integer binomial_exact(std::int64_t n, std::int64_t k);

/**
 * Both sides of the alternating binomial sum identity
 *
 *   sum_{i=1}^{k-1} C(k-1,i) (-1)^i ((1+x)^i - 1)/i
 *     = sum_{i=1}^{k-1} (-1)^i x^i / i,
 *
 * evaluated exactly. Equality is the tested property; k = 1 gives (0, 0).
 */
std::pair<Rational, Rational> alternating_binomial_check(int k,
                                                         const Rational& x);

/**
 * Both sides of the double binomial expansion
 *
 *   sum_{j=1}^{L} sum_{l=1}^{j} (-1)^{l+j} C(L+n, j+n) C(j-l+n-1, n-1) x^l
 *     = (1+x)^L - 1,
 *
 * evaluated exactly. Requires L >= 1, n >= 1.
 */
std::pair<Rational, Rational> binomial_expansion_check(int L, int n,
                                                       const Rational& x);

/**
 * Taylor-remainder bound for the pgf h of `law` around s = 1: with
 * R_l(s) = h(s) - sum_{k<l} m_k (s-1)^k / k! (m_k the factorial moments,
 * m_0 = 1), returns max over the grid of |R_l(s)| - (m_l/l!)|s-1|^l.
 * A nonpositive return means the bound holds everywhere on the grid.
 */
double taylor_remainder_check(const Pmf& law, int ell,
                              const std::vector<double>& s_grid);

/// |sum_j a_{n,j}^{(k)} x_j - x_limit/k| at horizon n, O(n) via suffix
/// products. The weighted sums of a convergent sequence approach limit/k.
double toeplitz_limit_check(const EnvironmentSpec& env, int k,
                            const std::function<double(std::int64_t)>& x_seq,
                            double x_limit, std::int64_t n);

/// max over the grid of |phi_n(1) - phi_n(s)| / (1 - mean_n) for the
/// generation-n offspring law; a vanishing diagnostic as n grows. Returns 0
/// when the law has mean 1 (the shape function is then identically 0).
double shape_uniformity_diag(const EnvironmentSpec& env, std::int64_t n,
                             const std::vector<double>& s_grid);

struct IdentitySuiteResult {
    std::string name;
    std::int64_t cases = 0;
    std::int64_t failures = 0;
    double max_abs_error = 0.0; // largest |lhs - rhs| seen, as a double
};

/**
 * Run all exact identity suites over a seeded corpus:
 *   - alternating-binomial-sum   (k <= max_k, n_rationals random x each)
 *   - double-binomial-expansion  (L, n <= max_L, n_rationals random x each)
 *   - stirling-inversion         (both compositions reduce to identity)
 *   - falling-factorial          (signed first-kind expansion of (j)_k)
 *   - moment-consistency         (second-kind weighted lambda = power moments)
 *   - coefficient-round-trip     (q -> lambda -> q is the identity)
 * Every check is exact; a suite passes iff failures == 0.
 */
std::vector<IdentitySuiteResult> run_identity_suites(int max_k, int max_L,
                                                     int n_rationals,
                                                     std::uint64_t seed);

} // namespace bpve
