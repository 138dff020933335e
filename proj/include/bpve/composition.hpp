#pragma once

#include "bpve/environment.hpp"

namespace bpve {

/// f_{j,n}(s) = f_{j+1}(f_{j+2}(... f_n(s))), the generating function of
/// generation n started from one individual at time j; f_{n,n}(s) = s.
/// Evaluated by backward iteration, requires 0 <= j <= n and s in [0,1].
double tail_compose(const EnvironmentSpec& env, std::int64_t j, std::int64_t n,
                    double s);

/// Mean of generation n from one individual at time j:
/// prod_{i=j+1}^n mean_i (empty product = 1).
double mean_product(const EnvironmentSpec& env, std::int64_t j, std::int64_t n);

/**
 * Composite shape function
 *
 *   phi_{j,n}(s) = sum_{k=j+1}^n phi_k(f_{k,n}(s)) / (mean_{j,k-1})
 *
 * which satisfies  1/(1 - f_{j,n}(s)) = 1/(mean_{j,n} (1-s)) + phi_{j,n}(s).
 * One backward pass produces every f_{k,n}(s); a forward pass accumulates
 * the sum against the running mean product.
 */
double phi_composite(const EnvironmentSpec& env, std::int64_t j, std::int64_t n,
                     double s);

} // namespace bpve
