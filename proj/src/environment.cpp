#include "bpve/environment.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bpve {

namespace {

double binom_small(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    double v = 1.0;
    for (int i = 0; i < k; ++i)
        v = v * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return v;
}

std::vector<std::int64_t> checkpoint_ladder(std::int64_t horizon) {
    std::vector<std::int64_t> cp;
    for (std::int64_t base = 1; base <= horizon; base *= 10)
        for (std::int64_t m : {1, 2, 5}) {
            std::int64_t n = base * m;
            if (n <= horizon)
                cp.push_back(n);
        }
    if (cp.empty() || cp.back() != horizon)
        cp.push_back(horizon);
    return cp;
}

Pmf poisson_pmf(double mu) {
    if (mu < 0.0)
        throw std::domain_error("poisson_pmf: negative mean");
    if (mu == 0.0)
        return Pmf::point_mass(0);
    auto cap = static_cast<std::size_t>(
        std::ceil(mu + 20.0 * std::sqrt(mu) + 20.0));
    std::vector<double> p(cap + 1, 0.0);
    p[0] = std::exp(-mu);
    detail::KahanSum total;
    total.add(p[0]);
    for (std::size_t j = 1; j <= cap; ++j) {
        p[j] = p[j - 1] * mu / static_cast<double>(j);
        total.add(p[j]);
    }
    double lost = 1.0 - total.value();
    return Pmf(std::move(p), lost > 0.0 ? lost : 0.0);
}

} // namespace

EnvironmentSpec EnvironmentSpec::quadratic(double a, std::int64_t n0,
                                           double nu) {
    if (!(a > 0.0))
        throw std::invalid_argument("quadratic: a must be positive");
    if (n0 < 0)
        throw std::invalid_argument("quadratic: n0 must be nonnegative");
    double d1 = a / static_cast<double>(1 + n0);
    if (!(d1 < 1.0) || d1 * (1.0 + nu) > 1.0)
        throw std::invalid_argument(
            "quadratic: first-generation entries leave [0,1]; shrink a or nu");
    EnvironmentSpec env = quadratic_with_decay(HarmonicDecay{a, n0}, nu);
    env.divergent_by_construction_ = true;
    return env;
}

EnvironmentSpec EnvironmentSpec::quadratic_with_decay(DecayFn decay,
                                                      double nu) {
    if (!(nu >= 0.0))
        throw std::invalid_argument("quadratic: nu must be nonnegative");
    EnvironmentSpec env;
    env.nu_ = nu;
    env.decay_ = std::move(decay);
    DecayFn d = env.decay_;
    env.offspring_ = [d, nu](std::int64_t n) {
        double dn = d(n);
        if (!(dn > 0.0 && dn < 1.0) || dn * (1.0 + nu) > 1.0)
            throw std::domain_error("quadratic family: invalid decay value " +
                                    std::to_string(dn) + " at n=" +
                                    std::to_string(n));
        double f2 = nu * dn / 2.0;
        double f0 = dn * (1.0 + nu / 2.0);
        return OffspringLaw(Pmf({f0, 1.0 - f0 - f2, f2}));
    };
    return env;
}

EnvironmentSpec EnvironmentSpec::unit_offspring() {
    EnvironmentSpec env;
    env.nu_ = 0.0;
    env.offspring_ = [](std::int64_t) {
        return OffspringLaw(Pmf::point_mass(1));
    };
    return env;
}

EnvironmentSpec EnvironmentSpec::custom(
    std::function<OffspringLaw(std::int64_t)> laws, double nu) {
    EnvironmentSpec env;
    env.nu_ = nu;
    env.offspring_ = std::move(laws);
    return env;
}

EnvironmentSpec
EnvironmentSpec::with_immigration(ImmigrationFamily family) const {
    if (const auto* fs = std::get_if<FiniteSupportImmigration>(&family)) {
        if (fs->q.empty())
            throw std::invalid_argument("immigration: empty q");
        for (double qj : fs->q)
            if (!(qj >= 0.0))
                throw std::invalid_argument("immigration: q entries must be >= 0");
    } else {
        if (!(std::get<PoissonImmigration>(family).lambda1 >= 0.0))
            throw std::invalid_argument("immigration: lambda1 must be >= 0");
    }
    EnvironmentSpec env = *this;
    env.immigration_ = std::move(family);
    return env;
}

OffspringLaw EnvironmentSpec::offspring_at(std::int64_t n) const {
    if (n < 1)
        throw std::invalid_argument("offspring_at: n must be >= 1");
    return offspring_(n);
}

double EnvironmentSpec::decay_at(std::int64_t n) const {
    if (decay_)
        return decay_(n);
    return 1.0 - offspring_at(n).mean();
}

Pmf EnvironmentSpec::immigration_at(std::int64_t n) const {
    if (n < 1)
        throw std::invalid_argument("immigration_at: n must be >= 1");
    if (!immigration_)
        throw std::logic_error("immigration_at: environment has no immigration");
    double dn = decay_at(n);
    if (const auto* fs = std::get_if<FiniteSupportImmigration>(&*immigration_)) {
        std::vector<double> p(fs->q.size() + 1, 0.0);
        detail::KahanSum used;
        for (std::size_t j = 0; j < fs->q.size(); ++j) {
            p[j + 1] = fs->q[j] * dn;
            used.add(p[j + 1]);
        }
        if (used.value() > 1.0)
            throw std::domain_error(
                "immigration_at: q scaled by decay exceeds unit mass at n=" +
                std::to_string(n));
        p[0] = 1.0 - used.value();
        return Pmf(std::move(p));
    }
    return poisson_pmf(std::get<PoissonImmigration>(*immigration_).lambda1 * dn);
}

std::optional<std::vector<double>> EnvironmentSpec::immigration_q() const {
    if (!immigration_)
        return std::nullopt;
    if (const auto* fs = std::get_if<FiniteSupportImmigration>(&*immigration_))
        return fs->q;
    return std::vector<double>{std::get<PoissonImmigration>(*immigration_).lambda1};
}

std::optional<std::vector<double>> EnvironmentSpec::immigration_lambda() const {
    if (!immigration_)
        return std::nullopt;
    if (const auto* fs = std::get_if<FiniteSupportImmigration>(&*immigration_)) {
        // lambda_k = sum_j C(j,k) q_j, identically 0 past the support
        std::size_t big_j = fs->q.size();
        std::vector<double> lambda(big_j + 1, 0.0);
        for (std::size_t k = 1; k <= big_j; ++k) {
            detail::KahanSum s;
            for (std::size_t j = k; j <= big_j; ++j)
                s.add(binom_small(static_cast<int>(j), static_cast<int>(k)) *
                      fs->q[j - 1]);
            lambda[k - 1] = s.value();
        }
        return lambda;
    }
    return std::vector<double>{
        std::get<PoissonImmigration>(*immigration_).lambda1, 0.0};
}

double toeplitz_weight(const EnvironmentSpec& env, std::int64_t n,
                       std::int64_t j, int k) {
    if (j < 1 || j > n || k < 1)
        throw std::invalid_argument("toeplitz_weight: need 1 <= j <= n, k >= 1");
    double w = 1.0 - env.offspring_at(j).mean();
    for (std::int64_t i = j + 1; i <= n; ++i) {
        double m = env.offspring_at(i).mean();
        double mk = m;
        for (int r = 1; r < k; ++r)
            mk *= m;
        w *= mk;
    }
    return w;
}

double toeplitz_row_sum(const EnvironmentSpec& env, std::int64_t n, int k) {
    if (n < 1 || k < 1)
        throw std::invalid_argument("toeplitz_row_sum: need n >= 1, k >= 1");
    // suffix products: suffix(j) = prod_{i=j+1}^n mean_i^k
    std::vector<double> mean(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::int64_t i = 1; i <= n; ++i)
        mean[static_cast<std::size_t>(i)] = env.offspring_at(i).mean();
    detail::KahanSum sum;
    double suffix = 1.0;
    for (std::int64_t j = n; j >= 1; --j) {
        sum.add((1.0 - mean[static_cast<std::size_t>(j)]) * suffix);
        double mk = mean[static_cast<std::size_t>(j)];
        double acc = mk;
        for (int r = 1; r < k; ++r)
            acc *= mk;
        suffix *= acc;
    }
    return sum.value();
}

ConditionReport check_conditions(const EnvironmentSpec& env,
                                 std::int64_t horizon) {
    if (horizon < 10)
        throw std::invalid_argument("check_conditions: horizon must be >= 10");
    ConditionReport rep;
    rep.horizon = horizon;
    rep.divergence_by_construction = env.divergence_by_construction();
    rep.checkpoints = checkpoint_ladder(horizon);

    auto lambda_declared = env.immigration_lambda();
    if (lambda_declared) {
        rep.lambda_declared = *lambda_declared;
        rep.lambda_ratio.assign(rep.lambda_declared.size(), {});
    }

    detail::KahanSum decay_sum;
    std::size_t next_cp = 0;
    double c2 = 0.0, c3 = 0.0;
    std::vector<double> lam_now(rep.lambda_declared.size(), 0.0);
    for (std::int64_t n = 1; n <= horizon; ++n) {
        OffspringLaw law = env.offspring_at(n);
        double gap = 1.0 - law.mean();
        rep.max_offspring_mean = std::max(rep.max_offspring_mean, law.mean());
        decay_sum.add(gap);
        bool at_cp = next_cp < rep.checkpoints.size() &&
                     rep.checkpoints[next_cp] == n;
        bool terminal = n == horizon;
        if (at_cp || terminal) {
            c2 = law.second_factorial() / gap;
            c3 = law.third_factorial() / gap;
            if (env.has_immigration()) {
                Pmf imm = env.immigration_at(n);
                double kfac = 1.0;
                for (std::size_t k = 1; k <= lam_now.size(); ++k) {
                    kfac *= static_cast<double>(k);
                    lam_now[k - 1] =
                        factorial_moment(imm, static_cast<int>(k)) / (kfac * gap);
                }
            }
        }
        if (at_cp) {
            rep.c2_ratio.push_back(c2);
            rep.c3_ratio.push_back(c3);
            for (std::size_t k = 0; k < lam_now.size(); ++k)
                rep.lambda_ratio[k].push_back(lam_now[k]);
            ++next_cp;
        }
    }
    rep.decay_partial_sum = decay_sum.value();
    rep.c2_terminal_deviation = std::fabs(c2 - env.nu());
    rep.c3_terminal = c3;
    for (std::size_t k = 0; k < lam_now.size(); ++k)
        rep.lambda_terminal_deviation.push_back(
            std::fabs(lam_now[k] - rep.lambda_declared[k]));
    return rep;
}

} // namespace bpve
