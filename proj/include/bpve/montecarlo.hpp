#pragma once

#include "bpve/environment.hpp"

#include <cstdint>
#include <map>

namespace bpve {

namespace counter_rng {

/**
 * Stateless counter-based generator: a SplitMix64 finalizer chain over the
 * draw coordinates (seed, replicate, generation, individual). Every variate
 * is a pure function of its coordinates, so simulations are bit-identical
 * under any thread layout or evaluation order. Individual 0 is reserved for
 * the immigration draw of a generation; branching individuals count from 1.
 */
std::uint64_t keyed_bits(std::uint64_t seed, std::uint64_t replicate,
                         std::uint64_t generation, std::uint64_t individual);

/// Uniform in [0,1) with 53 random bits.
double keyed_u01(std::uint64_t seed, std::uint64_t replicate,
                 std::uint64_t generation, std::uint64_t individual);

} // namespace counter_rng

struct SimConfig {
    std::uint64_t seed = 0;
    std::int64_t replicates = 1;
    std::int64_t horizon = 0;
    std::int64_t population_cap = 1000000;
};

/// Counted outcomes of the final generation across replicates.
struct EmpiricalLaw {
    std::map<std::int64_t, std::int64_t> counts;
    std::int64_t total = 0;     // aggregated replicates, = sum of counts
    std::int64_t survivors = 0; // replicates whose final value is positive

    /// Restriction to {final > 0}; total becomes survivors.
    EmpiricalLaw conditional() const;

    /// Dense normalized histogram (counts/total).
    Pmf to_pmf() const;
};

/// Forward simulation of X (single ancestor). Offspring are drawn by
/// inverse transform from each generation's cumulative table, which is
/// built once per generation and shared read-only across threads.
EmpiricalLaw simulate_x(const EnvironmentSpec& env, const SimConfig& config,
                        int threads = 1);

/// Forward simulation of Y (empty start, one immigration draw per
/// generation on top of the branching sum).
EmpiricalLaw simulate_y(const EnvironmentSpec& env, const SimConfig& config,
                        int threads = 1);

/// (1/2) sum_k | counts[k]/total - exact[k] | over the union support.
double empirical_tv(const EmpiricalLaw& emp, const Pmf& exact);

} // namespace bpve
