#include "bpve/evolve.hpp"

#include <cmath>
#include <string>

namespace bpve {

namespace {

constexpr double kMixtureTailCut = 1e-16;

// dst = src (*) law, truncated at cap; returns mass pushed past the cap.
// dst is resized to the truncated support.
double convolve_capped(const std::vector<double>& src, std::size_t src_len,
                       const Pmf& law, std::size_t cap,
                       std::vector<double>& dst) {
    const auto& b = law.probs();
    std::size_t full = src_len + b.size() - 1;
    std::size_t out = std::min(full, cap + 1);
    dst.assign(out, 0.0);
    double overflow = 0.0;
    for (std::size_t i = 0; i < src_len; ++i) {
        double v = src[i];
        if (v == 0.0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (i + j < out)
                dst[i + j] += v * b[j];
            else
                overflow += v * b[j];
        }
    }
    return overflow;
}

} // namespace

Evolution::Evolution(const EnvironmentSpec& env, Kind kind, std::size_t cap,
                     double lost_tol)
    : env_(&env), kind_(kind), cap_(cap), lost_tol_(lost_tol) {
    if (cap_ < 2)
        throw std::invalid_argument("Evolution: cap must be >= 2");
    if (kind_ == Kind::with_immigration && !env.has_immigration())
        throw std::invalid_argument("Evolution: environment has no immigration");
    state_.assign(cap_ + 1, 0.0);
    if (kind_ == Kind::branching) {
        state_[1] = 1.0; // X_0 = 1
        support_ = 2;
    } else {
        state_[0] = 1.0; // Y_0 = 0
        support_ = 1;
    }
}

void Evolution::step() {
    std::int64_t n = generation_ + 1;
    OffspringLaw offspring = env_->offspring_at(n);
    const double off_lost = offspring.pmf().lost_mass();

    // mixture of convolution powers over the previous state
    std::vector<double>& result = scratch_a_;
    result.assign(cap_ + 1, 0.0);
    std::size_t result_support = 1;
    double step_lost = 0.0;

    std::vector<double> power{1.0}; // offspring^(*0)
    std::size_t power_len = 1;
    double power_lost = 0.0;

    detail::KahanSum rem;
    for (std::size_t k = 0; k < support_; ++k)
        rem.add(state_[k]);
    double remaining = rem.value();

    for (std::size_t k = 0; k < support_; ++k) {
        if (k > 0) {
            power_lost += off_lost * (1.0 - power_lost);
            power_lost += convolve_capped(power, power_len, offspring.pmf(),
                                          cap_, scratch_b_);
            power.swap(scratch_b_);
            power_len = power.size();
        }
        double w = state_[k];
        if (w > 0.0) {
            for (std::size_t i = 0; i < power_len; ++i)
                result[i] += w * power[i];
            result_support = std::max(result_support, power_len);
            step_lost += w * power_lost;
        }
        remaining -= w;
        if (remaining < kMixtureTailCut) {
            if (remaining > 0.0)
                step_lost += remaining;
            break;
        }
    }
    lost_ += step_lost;

    state_.swap(result);
    state_.resize(cap_ + 1, 0.0);
    support_ = result_support;

    if (kind_ == Kind::with_immigration) {
        Pmf imm = env_->immigration_at(n);
        lost_ += imm.lost_mass() * (1.0 - lost_);
        lost_ += convolve_capped(state_, support_, imm, cap_, scratch_b_);
        state_.swap(scratch_b_);
        support_ = state_.size();
        state_.resize(cap_ + 1, 0.0);
    }

    generation_ = n;
    if (lost_ > lost_tol_)
        throw CapExceeded("evolution: truncation budget " +
                          std::to_string(lost_) + " exceeds tolerance at n=" +
                          std::to_string(generation_));
}

EvolutionResult Evolution::snapshot() const {
    std::vector<double> probs(state_.begin(),
                              state_.begin() + static_cast<std::ptrdiff_t>(
                                                   lost_ > 0.0 ? cap_ + 1
                                                               : support_));
    if (probs.empty())
        probs.push_back(0.0);
    EvolutionResult res;
    res.pmf = Pmf(std::move(probs), lost_);
    res.generation = generation_;
    res.lost_mass_bound = lost_;
    res.survival = 1.0 - res.pmf[0];
    return res;
}

EvolutionResult evolve_x(const EnvironmentSpec& env, std::int64_t n,
                         std::size_t cap, double lost_tol) {
    if (n < 0)
        throw std::invalid_argument("evolve_x: n must be >= 0");
    Evolution evo(env, Evolution::Kind::branching, cap, lost_tol);
    for (std::int64_t i = 0; i < n; ++i)
        evo.step();
    return evo.snapshot();
}

EvolutionResult evolve_y(const EnvironmentSpec& env, std::int64_t n,
                         std::size_t cap, double lost_tol) {
    if (n < 0)
        throw std::invalid_argument("evolve_y: n must be >= 0");
    Evolution evo(env, Evolution::Kind::with_immigration, cap, lost_tol);
    for (std::int64_t i = 0; i < n; ++i)
        evo.step();
    return evo.snapshot();
}

Pmf conditional_law(const EvolutionResult& result) {
    double survival = 1.0 - result.pmf[0];
    if (!(survival > 1e-300))
        throw std::domain_error(
            "conditional_law: survival below underflow guard");
    const auto& p = result.pmf.probs();
    std::vector<double> cond(p.size(), 0.0);
    for (std::size_t k = 1; k < p.size(); ++k)
        cond[k] = p[k] / survival;
    return Pmf(std::move(cond), result.pmf.lost_mass() / survival);
}

double conditional_mean(const EvolutionResult& result) {
    double survival = 1.0 - result.pmf[0];
    if (!(survival > 1e-300))
        throw std::domain_error(
            "conditional_mean: survival below underflow guard");
    return result.pmf.mean() / survival;
}

} // namespace bpve
