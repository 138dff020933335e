#include "bpve/limit_laws.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bpve {

namespace {

constexpr double kSeriesTol = 1e-12;
constexpr int kSeriesHardCap = 200000;

double binom_small(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    double v = 1.0;
    for (int i = 0; i < k; ++i)
        v = v * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return v;
}

void require_nu(double nu) {
    if (!(nu > 0.0))
        throw std::domain_error("limit law: nu must be positive (nu = 0 is the "
                                "degenerate point-mass regime)");
}

std::size_t q_support(const std::vector<double>& q) {
    std::size_t big_j = 0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (!(q[j] >= 0.0))
            throw std::invalid_argument("q sequence: entries must be >= 0");
        if (q[j] > 0.0)
            big_j = j + 1;
    }
    return big_j;
}

} // namespace

Pmf geometric_limit(double nu, std::size_t cap) {
    if (!(nu >= 0.0))
        throw std::domain_error("geometric_limit: nu must be >= 0");
    if (nu == 0.0)
        return Pmf::point_mass(1);
    double p = 2.0 / (2.0 + nu);
    double fail = 1.0 - p;
    if (cap == 0)
        cap = static_cast<std::size_t>(
            std::ceil(std::log(1e-15) / std::log(fail))) + 1;
    std::vector<double> probs(cap + 1, 0.0);
    double term = p;
    detail::KahanSum total;
    for (std::size_t k = 1; k <= cap; ++k) {
        probs[k] = term;
        total.add(term);
        term *= fail;
    }
    return Pmf(std::move(probs), std::pow(fail, static_cast<double>(cap)));
}

LambdaSequence LambdaSequence::finite(std::vector<double> values) {
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("LambdaSequence: entries must be >= 0");
    if (values.empty() || values.back() != 0.0)
        values.push_back(0.0);
    LambdaSequence seq;
    seq.finite_ = true;
    seq.values_ = std::move(values);
    return seq;
}

LambdaSequence LambdaSequence::generated(std::function<double(int)> gen,
                                         double growth_limsup) {
    if (!gen)
        throw std::invalid_argument("LambdaSequence: null generator");
    if (!(growth_limsup <= 1.0))
        throw std::invalid_argument(
            "LambdaSequence: growth certificate must be <= 1");
    LambdaSequence seq;
    seq.finite_ = false;
    seq.gen_ = std::move(gen);
    seq.growth_ = growth_limsup;
    return seq;
}

double LambdaSequence::at(int k) const {
    if (k < 1)
        throw std::invalid_argument("LambdaSequence: k must be >= 1");
    if (finite_)
        return static_cast<std::size_t>(k) <= values_.size()
                   ? values_[static_cast<std::size_t>(k) - 1]
                   : 0.0;
    double v = gen_(k);
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::domain_error("LambdaSequence: generator returned invalid "
                                "value at k=" + std::to_string(k));
    return v;
}

const std::vector<double>& LambdaSequence::stored() const {
    if (!finite_)
        throw std::logic_error("LambdaSequence: no stored values in generator mode");
    return values_;
}

double fY_closed_form(const LambdaSequence& lambda, double nu, double s) {
    require_nu(nu);
    if (!(s >= 0.0 && s < 1.0))
        throw std::domain_error("fY_closed_form: s outside [0,1)");
    const double x = nu * (1.0 - s) / 2.0;
    const double log_term = std::log1p(x);
    // running pieces: alt = sum_{i<k} (-1)^i x^i / i, coef = (2/nu)^k,
    // ubase = (1-s)^k for the generator-mode stopping bound
    double alt = 0.0;
    double xpow = 1.0;
    double coef = 1.0;
    double ubase = 1.0;
    detail::KahanSum total;
    const int kmax = lambda.finite_mode()
                         ? static_cast<int>(lambda.stored().size())
                         : kSeriesHardCap;
    int k = 1;
    for (; k <= kmax; ++k) {
        coef *= 2.0 / nu;
        ubase *= 1.0 - s;
        double lk = lambda.at(k);
        if (!lambda.finite_mode() &&
            lk * ubase / static_cast<double>(k) < kSeriesTol)
            break;
        if (lk > 0.0)
            total.add(coef * lk * (log_term + alt));
        // extend alt to include the k-th power term for the next round
        xpow *= -x;
        alt += xpow / static_cast<double>(k);
    }
    if (!lambda.finite_mode() && k > kSeriesHardCap)
        throw std::runtime_error(
            "fY_closed_form: k-sum did not reach the stopping bound");
    return std::exp(-total.value());
}

LambdaSequence lambda_from_q(const QSequence& q, int K) {
    if (K < 1)
        throw std::invalid_argument("lambda_from_q: K must be >= 1");
    std::size_t big_j = q_support(q.values);
    std::size_t count = std::max(static_cast<std::size_t>(K), big_j + 1);
    std::vector<double> lambda(count, 0.0);
    for (std::size_t k = 1; k <= count; ++k) {
        detail::KahanSum s;
        for (std::size_t j = k; j <= big_j; ++j)
            s.add(binom_small(static_cast<int>(j), static_cast<int>(k)) *
                  q.values[j - 1]);
        lambda[k - 1] = s.value();
    }
    return LambdaSequence::finite(std::move(lambda));
}

QSequence q_from_lambda(const LambdaSequence& lambda) {
    if (!lambda.finite_mode())
        throw std::invalid_argument(
            "q_from_lambda: defined for finite sequences only");
    const auto& lam = lambda.stored();
    std::size_t big_k = lam.size();
    std::vector<double> q(big_k, 0.0);
    for (std::size_t j = 1; j <= big_k; ++j) {
        detail::KahanSum s;
        double sign = 1.0;
        for (std::size_t k = j; k <= big_k; ++k) {
            s.add(sign * binom_small(static_cast<int>(k), static_cast<int>(j)) *
                  lam[k - 1]);
            sign = -sign;
        }
        double qj = s.value();
        if (qj < -1e-9)
            throw std::domain_error(
                "q_from_lambda: recovered q_" + std::to_string(j) +
                " = " + std::to_string(qj) + " is negative; the lambda "
                "sequence is not a valid moment-limit sequence");
        q[j - 1] = qj < 0.0 ? 0.0 : qj;
    }
    while (!q.empty() && q.back() == 0.0)
        q.pop_back();
    return QSequence{std::move(q)};
}

std::size_t cp_truncation(const QSequence& q, double nu, double tol) {
    require_nu(nu);
    if (!(tol > 0.0))
        throw std::invalid_argument("cp_truncation: tol must be positive");
    std::size_t big_j = q_support(q.values);
    if (big_j == 0)
        return 1;
    const double r = nu / (2.0 + nu);
    double cq = 0.0;
    double growth = 1.0;
    for (std::size_t j = 1; j <= big_j; ++j) {
        growth *= 1.0 + 2.0 / nu;
        cq += q.values[j - 1] * (growth - 1.0);
    }
    std::size_t n = std::max<std::size_t>(big_j, 1);
    double rpow = std::pow(r, static_cast<double>(n + 1));
    while (cq * rpow / (static_cast<double>(n + 1) * (1.0 - r)) >= tol) {
        ++n;
        rpow *= r;
    }
    return n;
}

CompoundPoissonLaw A_coefficients(const QSequence& q, double nu,
                                  std::size_t N) {
    require_nu(nu);
    if (N < 1)
        throw std::invalid_argument("A_coefficients: N must be >= 1");
    std::size_t big_j = q_support(q.values);
    const double r = nu / (2.0 + nu);

    // inner_n = sum_j q_j [ (1+2/nu)^(min(j,n)) - 1 ]; constant past n = J
    std::vector<double> inner(std::max<std::size_t>(big_j, 1) + 1, 0.0);
    {
        std::vector<double> growth_pow(big_j + 1, 1.0);
        for (std::size_t m = 1; m <= big_j; ++m)
            growth_pow[m] = growth_pow[m - 1] * (1.0 + 2.0 / nu);
        for (std::size_t n = 1; n < inner.size(); ++n) {
            detail::KahanSum s;
            for (std::size_t j = 1; j <= big_j; ++j)
                s.add(q.values[j - 1] * (growth_pow[std::min(j, n)] - 1.0));
            inner[n] = s.value();
        }
    }
    const double cq = big_j == 0 ? 0.0 : inner[big_j];

    CompoundPoissonLaw law;
    law.nu = nu;
    law.a.resize(N);
    double rpow = 1.0;
    detail::KahanSum stored_sum;
    for (std::size_t n = 1; n <= N; ++n) {
        rpow *= r;
        double in = n < inner.size() ? inner[n] : cq;
        law.a[n - 1] = rpow / static_cast<double>(n) * in;
        stored_sum.add(law.a[n - 1]);
    }

    // a0 = sum_{n<J} A_n + C_q ( log(1+nu/2) - sum_{n<J} r^n/n )
    detail::KahanSum head;
    detail::KahanSum geom_head;
    rpow = 1.0;
    for (std::size_t n = 1; n < big_j; ++n) {
        rpow *= r;
        head.add(rpow / static_cast<double>(n) * inner[n]);
        geom_head.add(rpow / static_cast<double>(n));
    }
    law.a0 = head.value() + cq * (std::log1p(nu / 2.0) - geom_head.value());
    law.tail_bound = std::max(0.0, law.a0 - stored_sum.value());
    return law;
}

double B_closed_form(std::int64_t n, std::int64_t j, double nu) {
    require_nu(nu);
    if (n < 1 || j < 1)
        throw std::invalid_argument("B_closed_form: need n >= 1, j >= 1");
    const double r = nu / (2.0 + nu);
    if (j >= n)
        return (1.0 - std::pow(r, static_cast<double>(n))) /
               static_cast<double>(n);
    return std::pow(r, static_cast<double>(n)) *
           (std::pow(1.0 + 2.0 / nu, static_cast<double>(j)) - 1.0) /
           static_cast<double>(n);
}

double cp_pgf(const CompoundPoissonLaw& law, double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::domain_error("cp_pgf: s outside [0,1]");
    detail::KahanSum expo;
    double spow = 1.0;
    for (double an : law.a) {
        spow *= s;
        expo.add(an * spow);
    }
    return std::exp(expo.value() - law.a0);
}

Pmf cp_pmf(const CompoundPoissonLaw& law, std::size_t cap) {
    if (cap < 1)
        throw std::invalid_argument("cp_pmf: cap must be >= 1");
    std::vector<double> p(cap + 1, 0.0);
    p[0] = std::exp(-law.a0);
    detail::KahanSum total;
    total.add(p[0]);
    const std::size_t N = law.a.size();
    for (std::size_t m = 1; m <= cap; ++m) {
        detail::KahanSum s;
        for (std::size_t n = 1; n <= std::min(m, N); ++n)
            s.add(static_cast<double>(n) * law.a[n - 1] * p[m - n]);
        p[m] = s.value() / static_cast<double>(m);
        total.add(p[m]);
    }
    return Pmf(std::move(p), std::max(0.0, 1.0 - total.value()));
}

Pmf negbin_limit(double lambda1, double nu, std::size_t cap) {
    require_nu(nu);
    if (!(lambda1 > 0.0))
        throw std::domain_error("negbin_limit: lambda1 must be positive");
    if (cap < 1)
        throw std::invalid_argument("negbin_limit: cap must be >= 1");
    const double r = 2.0 * lambda1 / nu;
    const double p = 2.0 / (2.0 + nu);
    std::vector<double> probs(cap + 1, 0.0);
    probs[0] = std::exp(r * std::log(p));
    detail::KahanSum total;
    total.add(probs[0]);
    for (std::size_t m = 0; m < cap; ++m) {
        probs[m + 1] = probs[m] * (static_cast<double>(m) + r) /
                       (static_cast<double>(m) + 1.0) * (1.0 - p);
        total.add(probs[m + 1]);
    }
    return Pmf(std::move(probs), std::max(0.0, 1.0 - total.value()));
}

namespace {

// triangle walk with explicit overflow propagation
std::int64_t stirling_triangle(int k, int i, bool second_kind) {
    if (k < 0 || i < 0 || i > k || k > 64)
        throw std::invalid_argument("stirling: need 0 <= i <= k <= 64");
    std::vector<std::int64_t> row(static_cast<std::size_t>(k) + 1, 0);
    std::vector<bool> over(static_cast<std::size_t>(k) + 1, false);
    row[0] = 1;
    for (int n = 1; n <= k; ++n) {
        for (int m = std::min(n, i); m >= 1; --m) {
            std::int64_t scaled = 0;
            std::int64_t factor = second_kind ? m : n - 1;
            bool bad = over[static_cast<std::size_t>(m)];
            if (!bad)
                bad = __builtin_mul_overflow(row[static_cast<std::size_t>(m)],
                                             factor, &scaled);
            if (!bad)
                bad = over[static_cast<std::size_t>(m - 1)] ||
                      __builtin_add_overflow(
                          scaled, row[static_cast<std::size_t>(m - 1)],
                          &row[static_cast<std::size_t>(m)]);
            over[static_cast<std::size_t>(m)] = bad;
        }
        row[0] = 0;
    }
    if (k == 0)
        return 1;
    if (over[static_cast<std::size_t>(i)])
        throw std::overflow_error("stirling: value exceeds 64-bit range at k=" +
                                  std::to_string(k) + ", i=" + std::to_string(i));
    return row[static_cast<std::size_t>(i)];
}

} // namespace

std::int64_t stirling2(int k, int i) { return stirling_triangle(k, i, true); }

std::int64_t stirling1_unsigned(int k, int i) {
    return stirling_triangle(k, i, false);
}

} // namespace bpve
