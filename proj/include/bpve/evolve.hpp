#pragma once

#include "bpve/environment.hpp"

#include <cstdint>
#include <stdexcept>

namespace bpve {

/// Raised when the truncation budget of an evolution exceeds its tolerance.
class CapExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Exact (up to truncation) law of a generation, with the truncation budget
/// carried along. survival = 1 - pmf[0]; the lost mass sits above the cap,
/// so P(X_n = 0) is exact up to lost_mass_bound.
struct EvolutionResult {
    Pmf pmf;
    std::int64_t generation = 0;
    double lost_mass_bound = 0.0;
    double survival = 0.0;
};

/**
 * Generation-by-generation evolution of the population law on {0,...,cap}.
 *
 * One branching step replaces the law p by the mixture
 *     sum_k p[k] * (offspring law)^(*k)
 * built from running convolution powers; the tail of the mixture is cut once
 * the remaining weight drops below 1e-16 (the remainder joins the truncation
 * budget). With immigration, the step then convolves the independent
 * immigration law of the generation on top. Mass pushed beyond the cap is
 * accounted in lost_mass_bound, never renormalized; if the budget exceeds
 * lost_tol the evolution refuses to continue (CapExceeded).
 */
class Evolution {
  public:
    enum class Kind { branching, with_immigration };

    Evolution(const EnvironmentSpec& env, Kind kind, std::size_t cap,
              double lost_tol = 0.01);

    void step();
    std::int64_t generation() const { return generation_; }
    EvolutionResult snapshot() const;

  private:
    const EnvironmentSpec* env_;
    Kind kind_;
    std::size_t cap_;
    double lost_tol_;
    std::int64_t generation_ = 0;
    std::vector<double> state_;
    std::size_t support_ = 0; // entries beyond support_ are zero
    double lost_ = 0.0;
    std::vector<double> scratch_a_;
    std::vector<double> scratch_b_;
};

/// Law of X_n (single ancestor, no immigration).
EvolutionResult evolve_x(const EnvironmentSpec& env, std::int64_t n,
                         std::size_t cap, double lost_tol = 0.01);

/// Law of Y_n (empty start, immigration every generation).
EvolutionResult evolve_y(const EnvironmentSpec& env, std::int64_t n,
                         std::size_t cap, double lost_tol = 0.01);

/// Law conditioned on {X_n > 0}; requires survival > 1e-300. The truncation
/// budget sits above the cap and is therefore inside the conditioning event;
/// it is rescaled along with the entries.
Pmf conditional_law(const EvolutionResult& result);

/// E[X_n | X_n > 0] of the stored entries.
double conditional_mean(const EvolutionResult& result);

} // namespace bpve
