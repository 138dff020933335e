#pragma once

#include "bpve/pgf.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace bpve {

/// Decay sequence n -> d_n in (0,1); d_n drives both how fast the offspring
/// mean approaches 1 from below and how fast immigration vanishes.
using DecayFn = std::function<double(std::int64_t)>;

/// Canonical decay d_n = a / (n + n0); sum d_n diverges, so the environment
/// is driven all the way to criticality.
struct HarmonicDecay {
    double a;
    std::int64_t n0;
    double operator()(std::int64_t n) const {
        return a / static_cast<double>(n + n0);
    }
};

/// P(eps_n = j) = q[j-1] * d_n for j = 1..J, remainder at 0.
struct FiniteSupportImmigration {
    std::vector<double> q;
};

/// eps_n ~ Poisson(lambda1 * d_n), truncated far out in the tail.
struct PoissonImmigration {
    double lambda1;
};

using ImmigrationFamily =
    std::variant<FiniteSupportImmigration, PoissonImmigration>;

/**
 * A nearly critical varying environment: one offspring law per generation,
 * all subcritical with mean 1 - d_n, plus an optional immigration family
 * coupled to the same decay.
 *
 * The quadratic family places
 *     f_n[2] = nu d_n / 2,  f_n[0] = d_n (1 + nu/2),  f_n[1] = 1 - f_n[0] - f_n[2]
 * so that the normalized second factorial moment f_n''(1)/(1 - mean_n) equals
 * nu exactly at every generation.
 */
class EnvironmentSpec {
  public:
    /// Quadratic offspring family with harmonic decay a/(n+n0).
    static EnvironmentSpec quadratic(double a, std::int64_t n0, double nu);

    /// Quadratic family over an arbitrary decay sequence. The family is only
    /// flagged as divergence-by-construction for the harmonic factory.
    static EnvironmentSpec quadratic_with_decay(DecayFn decay, double nu);

    /// Degenerate environment f_n(s) = s (one child always); used to pin
    /// down trivial edge behavior.
    static EnvironmentSpec unit_offspring();

    /// Arbitrary per-generation laws for randomized property tests.
    static EnvironmentSpec custom(std::function<OffspringLaw(std::int64_t)> laws,
                                  double nu);

    EnvironmentSpec with_immigration(ImmigrationFamily family) const;

    OffspringLaw offspring_at(std::int64_t n) const; // n >= 1
    bool has_immigration() const { return immigration_.has_value(); }
    Pmf immigration_at(std::int64_t n) const;        // n >= 1

    double nu() const { return nu_; }
    /// d_n: the declared decay, or 1 - offspring mean for custom families.
    double decay_at(std::int64_t n) const;
    bool divergence_by_construction() const { return divergent_by_construction_; }

    /// Limits q_j = lim P(eps_n = j)/d_n of the immigration family.
    std::optional<std::vector<double>> immigration_q() const;
    /// Limits lambda_k = lim m_{n,k}/(k! d_n); trailing entry is 0.
    std::optional<std::vector<double>> immigration_lambda() const;

  private:
    EnvironmentSpec() = default;

    std::function<OffspringLaw(std::int64_t)> offspring_;
    std::optional<ImmigrationFamily> immigration_;
    DecayFn decay_;
    double nu_ = 0.0;
    bool divergent_by_construction_ = false;
};

/// Toeplitz weight a_{n,j}^{(k)} = (1 - mean_j) * prod_{i=j+1}^n mean_i^k
/// for 1 <= j <= n. These weights average sequences with limit x to x/k.
double toeplitz_weight(const EnvironmentSpec& env, std::int64_t n,
                       std::int64_t j, int k);

/// sum_{j=1}^n a_{n,j}^{(k)}, computed in O(n) with suffix products.
double toeplitz_row_sum(const EnvironmentSpec& env, std::int64_t n, int k);

/**
 * Verdict data for the nearly-critical conditions over a finite horizon:
 * subcriticality of every mean, divergence of sum d_n (partial sum plus a
 * by-construction flag), and the normalized moment ratios whose limits the
 * environment declares. Trajectories are sampled at a 1-2-5 checkpoint
 * ladder plus the horizon itself.
 */
struct ConditionReport {
    std::int64_t horizon = 0;
    double max_offspring_mean = 0.0;
    double decay_partial_sum = 0.0;
    bool divergence_by_construction = false;

    std::vector<std::int64_t> checkpoints;
    std::vector<double> c2_ratio;            // f''(1) / (1 - mean)
    std::vector<double> c3_ratio;            // f'''(1) / (1 - mean)
    double c2_terminal_deviation = 0.0;      // |c2(horizon) - nu|
    double c3_terminal = 0.0;

    std::vector<double> lambda_declared;                 // empty without immigration
    std::vector<std::vector<double>> lambda_ratio;       // [k-1][checkpoint]
    std::vector<double> lambda_terminal_deviation;       // |ratio(horizon) - lambda_k|
};

ConditionReport check_conditions(const EnvironmentSpec& env,
                                 std::int64_t horizon);

} // namespace bpve
