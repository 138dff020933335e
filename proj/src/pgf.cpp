#include "bpve/pgf.hpp"

#include <cmath>
#include <stdexcept>

namespace bpve {

namespace {

constexpr double kNearOneSwitch = 1e-6;

// A(u) = sum_k p_k [ (1-u)^k - 1 + k u ] / u^2
//      = sum_k p_k sum_{j>=2} C(k,j) (-u)^{j-2},
// summed forward with incremental binomial ratios; terms decay like k*u
// per step, so for u <= 1e-6 a handful of terms reaches machine precision.
double factorial_expansion(const Pmf& pmf, double u) {
    detail::KahanSum acc;
    const auto& p = pmf.probs();
    for (std::size_t k = 2; k < p.size(); ++k) {
        if (p[k] == 0.0)
            continue;
        double kk = static_cast<double>(k);
        double term = kk * (kk - 1.0) / 2.0; // C(k,2)
        double g = 0.0;
        for (std::size_t j = 2; j <= k; ++j) {
            g += term;
            double next = term * (-u) * (kk - static_cast<double>(j)) /
                          (static_cast<double>(j) + 1.0);
            if (std::fabs(next) < 1e-18 * std::fabs(g))
                break;
            term = next;
        }
        acc.add(p[k] * g);
    }
    return acc.value();
}

} // namespace

OffspringLaw::OffspringLaw(Pmf pmf) : pmf_(std::move(pmf)) {
    mean_ = pmf_.mean();
    m2_ = pmf_.probs().size() > 2 ? factorial_moment(pmf_, 2) : 0.0;
    m3_ = pmf_.probs().size() > 3 ? factorial_moment(pmf_, 3) : 0.0;
}

double shape_function(const OffspringLaw& law, double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::domain_error("shape_function: s outside [0,1]");
    double mean = law.mean();
    if (!(mean > 0.0))
        throw std::domain_error("shape_function: degenerate law (mean 0)");

    if (s == 1.0)
        return law.second_factorial() / (2.0 * mean * mean);

    if (s > 1.0 - kNearOneSwitch) {
        double u = 1.0 - s;
        double a = factorial_expansion(law.pmf(), u);
        return a / (mean * (mean - u * a));
    }

    double fs = eval_pgf(law.pmf(), s);
    double one_minus = 1.0 - fs;
    if (!(one_minus > 0.0))
        throw std::domain_error("shape_function: f(s) = 1 at s < 1");
    return 1.0 / one_minus - 1.0 / (mean * (1.0 - s));
}

} // namespace bpve
