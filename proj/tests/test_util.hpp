#pragma once

#include "bpve/environment.hpp"

#include <memory>
#include <random>
#include <vector>

namespace testutil {

inline const std::vector<double>& s_grid() {
    static const std::vector<double> grid = {0.0, 0.1, 0.2,  0.3, 0.4, 0.5,
                                             0.6, 0.7, 0.8,  0.9, 0.99, 1.0};
    return grid;
}

/// Random law on {0,..,3} with mean in (0.55, 0.98) and positive mass at 0,
/// valid as a subcritical environment member.
inline bpve::OffspringLaw random_offspring(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mean_draw(0.55, 0.98);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    const double mean = mean_draw(rng);
    const double p2 = frac(rng) * mean / 4.0;
    const double p3 = frac(rng) * mean / 9.0;
    const double p1 = mean - 2.0 * p2 - 3.0 * p3;
    const double p0 = 1.0 - p1 - p2 - p3;
    return bpve::OffspringLaw(bpve::Pmf({p0, p1, p2, p3}));
}

/// Environment cycling through `length` random subcritical laws.
inline bpve::EnvironmentSpec random_environment(std::mt19937_64& rng,
                                                int length = 12) {
    auto laws = std::make_shared<std::vector<bpve::OffspringLaw>>();
    for (int i = 0; i < length; ++i)
        laws->push_back(random_offspring(rng));
    return bpve::EnvironmentSpec::custom(
        [laws](std::int64_t n) {
            return (*laws)[static_cast<std::size_t>((n - 1) %
                           static_cast<std::int64_t>(laws->size()))];
        },
        0.0);
}

/// Random normalized pmf on {0,..,support} with all entries positive.
inline bpve::Pmf random_pmf(std::mt19937_64& rng, int support = 5) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> w(static_cast<std::size_t>(support) + 1);
    double total = 0.0;
    for (auto& x : w) {
        x = u(rng);
        total += x;
    }
    for (auto& x : w)
        x /= total;
    return bpve::Pmf(std::move(w));
}

} // namespace testutil
