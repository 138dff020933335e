#pragma once

#include "bpve/pmf.hpp"

namespace bpve {

/// An offspring distribution together with its first three factorial moments
/// f'(1), f''(1), f'''(1), cached at construction from the stored entries.
class OffspringLaw {
  public:
    explicit OffspringLaw(Pmf pmf);

    const Pmf& pmf() const { return pmf_; }
    double mean() const { return mean_; }             // f'(1)
    double second_factorial() const { return m2_; }   // f''(1)
    double third_factorial() const { return m3_; }    // f'''(1)

  private:
    Pmf pmf_;
    double mean_;
    double m2_;
    double m3_;
};

/**
 * Shape function of the generating function f,
 *
 *     phi(s) = 1/(1 - f(s)) - 1/(f'(1) (1 - s)),   0 <= s < 1,
 *     phi(1) = f''(1) / (2 f'(1)^2).
 *
 * The two reciprocals cancel catastrophically as s -> 1, so above
 * 1 - 1e-6 the value is computed from the factorial-moment expansion
 *     A(u) = (f(1-u) - 1 + f'(1) u) / u^2   (binomial series, no cancellation)
 *     phi  = A / (f'(1) (f'(1) - u A)),
 * which tends continuously to the s = 1 value.
 *
 * Requires mean > 0 and s in [0,1]; a law with pmf[0] = 1 is rejected as a
 * singularity of 1/(1 - f(s)).
 */
double shape_function(const OffspringLaw& law, double s);

} // namespace bpve
