#include "bpve/identities.hpp"

#include "bpve/limit_laws.hpp"
#include "bpve/pgf.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace bpve {

Integer binomial_exact(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    Integer r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i; // exact: r is C(n-k+i, i) at each step
    }
    return r;
}

std::pair<Rational, Rational> alternating_binomial_check(int k,
                                                         const Rational& x) {
    if (k < 1)
        throw std::invalid_argument("alternating_binomial_check: k must be >= 1");
    Rational lhs = 0, rhs = 0;
    const Rational onepx = Rational(1) + x;
    Rational pow_lhs = 1, pow_rhs = 1;
    for (int i = 1; i <= k - 1; ++i) {
        pow_lhs *= onepx;
        pow_rhs *= x;
        const int sign = (i % 2 != 0) ? -1 : 1;
        lhs += Rational(sign * binomial_exact(k - 1, i)) * (pow_lhs - 1) / i;
        rhs += Rational(sign) * pow_rhs / i;
    }
    return {lhs, rhs};
}

std::pair<Rational, Rational> binomial_expansion_check(int L, int n,
                                                       const Rational& x) {
    if (L < 1 || n < 1)
        throw std::invalid_argument(
            "binomial_expansion_check: L and n must be >= 1");
    Rational lhs = 0;
    for (int j = 1; j <= L; ++j) {
        const Integer outer = binomial_exact(L + n, j + n);
        Rational xp = 1;
        for (int l = 1; l <= j; ++l) {
            xp *= x;
            const int sign = ((l + j) % 2 == 0) ? 1 : -1;
            lhs += Rational(sign * outer *
                            binomial_exact(j - l + n - 1, n - 1)) *
                   xp;
        }
    }
    Rational rhs = 1;
    const Rational onepx = Rational(1) + x;
    for (int i = 0; i < L; ++i)
        rhs *= onepx;
    rhs -= 1;
    return {lhs, rhs};
}

double taylor_remainder_check(const Pmf& law, int ell,
                              const std::vector<double>& s_grid) {
    if (ell < 1)
        throw std::invalid_argument("taylor_remainder_check: ell must be >= 1");
    if (s_grid.empty())
        throw std::invalid_argument("taylor_remainder_check: empty grid");
    std::vector<double> m(static_cast<std::size_t>(ell) + 1);
    m[0] = 1.0;
    for (int k = 1; k <= ell; ++k)
        m[static_cast<std::size_t>(k)] = factorial_moment(law, k);
    std::vector<double> inv_fact(static_cast<std::size_t>(ell) + 1, 1.0);
    for (int k = 1; k <= ell; ++k)
        inv_fact[static_cast<std::size_t>(k)] =
            inv_fact[static_cast<std::size_t>(k - 1)] / k;

    double worst = -std::numeric_limits<double>::infinity();
    for (double s : s_grid) {
        if (s < 0.0 || s > 1.0)
            throw std::domain_error("taylor_remainder_check: s outside [0,1]");
        double partial = 0.0;
        double pw = 1.0;
        for (int k = 0; k < ell; ++k) {
            partial += m[static_cast<std::size_t>(k)] * pw *
                       inv_fact[static_cast<std::size_t>(k)];
            pw *= (s - 1.0);
        }
        const double remainder = eval_pgf(law, s) - partial;
        const double bound = m[static_cast<std::size_t>(ell)] *
                             std::fabs(pw) *
                             inv_fact[static_cast<std::size_t>(ell)];
        worst = std::max(worst, std::fabs(remainder) - bound);
    }
    return worst;
}

double toeplitz_limit_check(const EnvironmentSpec& env, int k,
                            const std::function<double(std::int64_t)>& x_seq,
                            double x_limit, std::int64_t n) {
    if (k < 1)
        throw std::invalid_argument("toeplitz_limit_check: k must be >= 1");
    if (n < 1)
        throw std::invalid_argument("toeplitz_limit_check: n must be >= 1");
    detail::KahanSum acc;
    double suffix = 1.0; // prod_{i=j+1}^n mean_i^k, built backward
    for (std::int64_t j = n; j >= 1; --j) {
        const double mean = env.offspring_at(j).mean();
        acc.add((1.0 - mean) * suffix * x_seq(j));
        double p = mean;
        for (int t = 1; t < k; ++t)
            p *= mean;
        suffix *= p;
    }
    return std::fabs(acc.value() - x_limit / static_cast<double>(k));
}

double shape_uniformity_diag(const EnvironmentSpec& env, std::int64_t n,
                             const std::vector<double>& s_grid) {
    const OffspringLaw law = env.offspring_at(n);
    const double denom = 1.0 - law.mean();
    if (denom <= 0.0)
        return 0.0;
    const double phi1 = shape_function(law, 1.0);
    double worst = 0.0;
    for (double s : s_grid)
        worst = std::max(worst, std::fabs(phi1 - shape_function(law, s)));
    return worst / denom;
}

namespace {

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 20);
    return Rational(num(rng), den(rng));
}

void record(IdentitySuiteResult& suite, const Rational& lhs,
            const Rational& rhs) {
    ++suite.cases;
    if (lhs != rhs) {
        ++suite.failures;
        Rational diff = lhs - rhs;
        if (diff < 0)
            diff = -diff;
        suite.max_abs_error =
            std::max(suite.max_abs_error, diff.convert_to<double>());
    }
}

void record_int(IdentitySuiteResult& suite, const Integer& lhs,
                const Integer& rhs) {
    record(suite, Rational(lhs), Rational(rhs));
}

} // namespace

std::vector<IdentitySuiteResult> run_identity_suites(int max_k, int max_L,
                                                     int n_rationals,
                                                     std::uint64_t seed) {
    if (max_k < 1 || max_L < 1 || n_rationals < 1)
        throw std::invalid_argument("run_identity_suites: all bounds >= 1");
    std::mt19937_64 rng(seed);
    std::vector<IdentitySuiteResult> out;

    {
        IdentitySuiteResult suite{"alternating-binomial-sum", 0, 0, 0.0};
        for (int k = 1; k <= max_k; ++k)
            for (int r = 0; r < n_rationals; ++r) {
                const auto [lhs, rhs] =
                    alternating_binomial_check(k, random_rational(rng));
                record(suite, lhs, rhs);
            }
        out.push_back(suite);
    }

    {
        IdentitySuiteResult suite{"double-binomial-expansion", 0, 0, 0.0};
        for (int L = 1; L <= max_L; ++L)
            for (int n = 1; n <= max_L; ++n)
                for (int r = 0; r < n_rationals; ++r) {
                    const auto [lhs, rhs] =
                        binomial_expansion_check(L, n, random_rational(rng));
                    record(suite, lhs, rhs);
                }
        out.push_back(suite);
    }

    {
        IdentitySuiteResult suite{"stirling-inversion", 0, 0, 0.0};
        for (int k = 1; k <= max_k; ++k)
            for (int j = 0; j <= k; ++j) {
                Integer forward = 0, backward = 0;
                for (int i = j; i <= k; ++i) {
                    const int sign = ((i + j) % 2 == 0) ? 1 : -1;
                    forward += Integer(sign) * stirling2(k, i) *
                               stirling1_unsigned(i, j);
                    const int sign2 = ((k + i) % 2 == 0) ? 1 : -1;
                    backward += Integer(sign2) * stirling1_unsigned(k, i) *
                                stirling2(i, j);
                }
                const Integer expect = (j == k) ? 1 : 0;
                record_int(suite, forward, expect);
                record_int(suite, backward, expect);
            }
        out.push_back(suite);
    }

    {
        IdentitySuiteResult suite{"falling-factorial", 0, 0, 0.0};
        for (int k = 1; k <= max_k; ++k)
            for (int j = 0; j <= max_k; ++j) {
                Integer lhs = 0;
                Integer jp = 1; // j^i running
                for (int i = 0; i <= k; ++i) {
                    const int sign = ((k + i) % 2 == 0) ? 1 : -1;
                    lhs += Integer(sign) * stirling1_unsigned(k, i) * jp;
                    jp *= j;
                }
                Integer rhs = 1;
                for (int t = 0; t < k; ++t)
                    rhs *= (j - t);
                record_int(suite, lhs, rhs);
            }
        out.push_back(suite);
    }

    std::uniform_int_distribution<int> q_len(1, 6);
    std::uniform_int_distribution<int> q_entry(0, 5);
    {
        IdentitySuiteResult suite{"moment-consistency", 0, 0, 0.0};
        const int n_vectors = std::max(1, n_rationals / 2);
        for (int v = 0; v < n_vectors; ++v) {
            const int J = q_len(rng);
            std::vector<Integer> q(static_cast<std::size_t>(J) + 1, 0);
            for (int j = 1; j <= J; ++j)
                q[static_cast<std::size_t>(j)] = q_entry(rng);
            const int kmax = std::min(max_k, 8);
            std::vector<Integer> lambda(static_cast<std::size_t>(kmax) + 1, 0);
            for (int k = 1; k <= kmax; ++k)
                for (int j = 1; j <= J; ++j)
                    lambda[static_cast<std::size_t>(k)] +=
                        binomial_exact(j, k) * q[static_cast<std::size_t>(j)];
            for (int k = 1; k <= kmax; ++k) {
                Integer mu = 0;
                Integer ifact = 1;
                for (int i = 1; i <= k; ++i) {
                    ifact *= i;
                    mu += stirling2(k, i) * ifact *
                          lambda[static_cast<std::size_t>(i)];
                }
                Integer power_moment = 0;
                for (int j = 1; j <= J; ++j) {
                    Integer jp = 1;
                    for (int t = 0; t < k; ++t)
                        jp *= j;
                    power_moment += q[static_cast<std::size_t>(j)] * jp;
                }
                record_int(suite, mu, power_moment);
            }
        }
        out.push_back(suite);
    }

    {
        IdentitySuiteResult suite{"coefficient-round-trip", 0, 0, 0.0};
        std::uniform_int_distribution<int> long_len(1, 10);
        const int n_vectors = std::max(1, n_rationals / 2);
        for (int v = 0; v < n_vectors; ++v) {
            const int J = long_len(rng);
            std::vector<Integer> q(static_cast<std::size_t>(J) + 1, 0);
            for (int j = 1; j <= J; ++j)
                q[static_cast<std::size_t>(j)] = q_entry(rng);
            std::vector<Integer> lambda(static_cast<std::size_t>(J) + 1, 0);
            for (int k = 1; k <= J; ++k)
                for (int j = k; j <= J; ++j)
                    lambda[static_cast<std::size_t>(k)] +=
                        binomial_exact(j, k) * q[static_cast<std::size_t>(j)];
            for (int j = 1; j <= J; ++j) {
                Integer back = 0;
                for (int k = j; k <= J; ++k) {
                    const int sign = ((k + j) % 2 == 0) ? 1 : -1;
                    back += Integer(sign) * binomial_exact(k, j) *
                            lambda[static_cast<std::size_t>(k)];
                }
                record_int(suite, back, q[static_cast<std::size_t>(j)]);
            }
        }
        out.push_back(suite);
    }

    return out;
}

} // namespace bpve
