#include "bpve/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bpve {

namespace counter_rng {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace

std::uint64_t keyed_bits(std::uint64_t seed, std::uint64_t replicate,
                         std::uint64_t generation, std::uint64_t individual) {
    std::uint64_t h = mix64(seed + kGolden);
    h = mix64(h ^ (replicate + kGolden));
    h = mix64(h ^ (generation + kGolden));
    h = mix64(h ^ (individual + kGolden));
    return h;
}

double keyed_u01(std::uint64_t seed, std::uint64_t replicate,
                 std::uint64_t generation, std::uint64_t individual) {
    return static_cast<double>(
               keyed_bits(seed, replicate, generation, individual) >> 11) *
           0x1.0p-53;
}

} // namespace counter_rng

namespace {

struct GenTables {
    // cumulative offspring probabilities per generation (index n-1)
    std::vector<std::vector<double>> offspring;
    std::vector<std::vector<double>> immigration; // empty when unused
};

std::vector<double> cumulative(const Pmf& law) {
    const auto& p = law.probs();
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        acc += p[k];
        cdf[k] = acc;
    }
    cdf.back() = 1.0; // lost mass charged to the top bin
    return cdf;
}

inline std::int64_t sample(const std::vector<double>& cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end())
        --it;
    return static_cast<std::int64_t>(it - cdf.begin());
}

void check_config(const SimConfig& config) {
    if (config.replicates < 1)
        throw std::invalid_argument("simulate: replicates must be >= 1");
    if (config.horizon < 0)
        throw std::invalid_argument("simulate: horizon must be >= 0");
    if (config.population_cap < 1)
        throw std::invalid_argument("simulate: population_cap must be >= 1");
}

EmpiricalLaw run_replicates(const GenTables& tables, const SimConfig& config,
                            bool with_immigration, int threads) {
    if (threads < 1)
        throw std::invalid_argument("simulate: threads must be >= 1");
    const std::int64_t R = config.replicates;

    auto worker = [&](std::int64_t lo, std::int64_t hi, EmpiricalLaw& out,
                      std::string& error) {
        try {
            for (std::int64_t rep = lo; rep < hi; ++rep) {
                std::int64_t pop = with_immigration ? 0 : 1;
                for (std::int64_t gen = 1; gen <= config.horizon; ++gen) {
                    const auto& cdf =
                        tables.offspring[static_cast<std::size_t>(gen - 1)];
                    std::int64_t next = 0;
                    for (std::int64_t j = 1; j <= pop; ++j)
                        next += sample(cdf, counter_rng::keyed_u01(
                                                config.seed,
                                                static_cast<std::uint64_t>(rep),
                                                static_cast<std::uint64_t>(gen),
                                                static_cast<std::uint64_t>(j)));
                    if (with_immigration)
                        next += sample(
                            tables.immigration[static_cast<std::size_t>(gen - 1)],
                            counter_rng::keyed_u01(
                                config.seed, static_cast<std::uint64_t>(rep),
                                static_cast<std::uint64_t>(gen), 0));
                    if (next > config.population_cap)
                        throw std::runtime_error(
                            "simulate: population cap exceeded at generation " +
                            std::to_string(gen));
                    pop = next;
                    if (pop == 0 && !with_immigration)
                        break;
                }
                ++out.counts[pop];
                ++out.total;
                if (pop > 0)
                    ++out.survivors;
            }
        } catch (const std::exception& e) {
            error = e.what();
        }
    };

    std::vector<EmpiricalLaw> parts(static_cast<std::size_t>(threads));
    std::vector<std::string> errors(static_cast<std::size_t>(threads));
    if (threads == 1) {
        worker(0, R, parts[0], errors[0]);
    } else {
        std::vector<std::thread> pool;
        std::int64_t chunk = (R + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::int64_t lo = std::min<std::int64_t>(R, t * chunk);
            std::int64_t hi = std::min<std::int64_t>(R, lo + chunk);
            pool.emplace_back(worker, lo, hi,
                              std::ref(parts[static_cast<std::size_t>(t)]),
                              std::ref(errors[static_cast<std::size_t>(t)]));
        }
        for (auto& th : pool)
            th.join();
    }
    for (const auto& err : errors)
        if (!err.empty())
            throw std::runtime_error(err);

    EmpiricalLaw merged;
    for (const auto& part : parts) {
        for (const auto& [value, count] : part.counts)
            merged.counts[value] += count;
        merged.total += part.total;
        merged.survivors += part.survivors;
    }
    return merged;
}

GenTables build_tables(const EnvironmentSpec& env, std::int64_t horizon,
                       bool with_immigration) {
    GenTables tables;
    tables.offspring.reserve(static_cast<std::size_t>(horizon));
    for (std::int64_t n = 1; n <= horizon; ++n) {
        tables.offspring.push_back(cumulative(env.offspring_at(n).pmf()));
        if (with_immigration)
            tables.immigration.push_back(cumulative(env.immigration_at(n)));
    }
    return tables;
}

} // namespace

EmpiricalLaw EmpiricalLaw::conditional() const {
    EmpiricalLaw cond;
    for (const auto& [value, count] : counts)
        if (value > 0)
            cond.counts[value] = count;
    cond.survivors = survivors;
    cond.total = survivors;
    return cond;
}

Pmf EmpiricalLaw::to_pmf() const {
    if (total <= 0)
        throw std::logic_error("EmpiricalLaw: no replicates recorded");
    std::size_t top = counts.empty()
                          ? 0
                          : static_cast<std::size_t>(counts.rbegin()->first);
    std::vector<double> probs(top + 1, 0.0);
    for (const auto& [value, count] : counts)
        probs[static_cast<std::size_t>(value)] =
            static_cast<double>(count) / static_cast<double>(total);
    return Pmf(std::move(probs));
}

EmpiricalLaw simulate_x(const EnvironmentSpec& env, const SimConfig& config,
                        int threads) {
    check_config(config);
    GenTables tables = build_tables(env, config.horizon, false);
    return run_replicates(tables, config, false, threads);
}

EmpiricalLaw simulate_y(const EnvironmentSpec& env, const SimConfig& config,
                        int threads) {
    check_config(config);
    if (!env.has_immigration())
        throw std::invalid_argument("simulate_y: environment has no immigration");
    GenTables tables = build_tables(env, config.horizon, true);
    return run_replicates(tables, config, true, threads);
}

double empirical_tv(const EmpiricalLaw& emp, const Pmf& exact) {
    if (emp.total <= 0)
        throw std::logic_error("empirical_tv: no replicates recorded");
    detail::KahanSum sum;
    const double total = static_cast<double>(emp.total);
    std::size_t top = exact.probs().size();
    if (!emp.counts.empty())
        top = std::max(top,
                       static_cast<std::size_t>(emp.counts.rbegin()->first) + 1);
    for (std::size_t k = 0; k < top; ++k) {
        auto it = emp.counts.find(static_cast<std::int64_t>(k));
        double phat =
            it == emp.counts.end()
                ? 0.0
                : static_cast<double>(it->second) / total;
        sum.add(std::fabs(phat - exact[k]));
    }
    return 0.5 * sum.value();
}

} // namespace bpve
