#include "bpve/pmf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bpve {

namespace {

constexpr double kEntrySlack = 1e-12; // forgives -0.0 style rounding dust
constexpr double kMassSlack = 1e-9;

} // namespace

Pmf::Pmf() : probs_{1.0}, lost_(0.0) {}

Pmf::Pmf(std::vector<double> probs, double lost_mass)
    : probs_(std::move(probs)), lost_(lost_mass) {
    if (probs_.empty())
        throw std::invalid_argument("Pmf: empty support");
    if (lost_ < 0.0) {
        if (lost_ < -kEntrySlack)
            throw std::invalid_argument("Pmf: negative lost_mass");
        lost_ = 0.0;
    }
    detail::KahanSum total;
    for (double& p : probs_) {
        if (!std::isfinite(p) || p < -kEntrySlack || p > 1.0 + kMassSlack)
            throw std::invalid_argument("Pmf: entry outside [0,1]: " +
                                        std::to_string(p));
        if (p < 0.0)
            p = 0.0;
        total.add(p);
    }
    total.add(lost_);
    if (std::fabs(total.value() - 1.0) > kMassSlack)
        throw std::invalid_argument("Pmf: mass " + std::to_string(total.value()) +
                                    " not 1 within 1e-9");
}

Pmf Pmf::point_mass(std::size_t k) {
    std::vector<double> p(k + 1, 0.0);
    p[k] = 1.0;
    return Pmf(std::move(p));
}

double Pmf::mass() const {
    detail::KahanSum s;
    for (double p : probs_)
        s.add(p);
    return s.value();
}

double Pmf::mean() const {
    detail::KahanSum s;
    for (std::size_t k = 1; k < probs_.size(); ++k)
        s.add(static_cast<double>(k) * probs_[k]);
    return s.value();
}

double eval_pgf(const Pmf& law, double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::domain_error("eval_pgf: s outside [0,1]");
    const auto& p = law.probs();
    double acc = p.back() + law.lost_mass();
    for (std::size_t k = p.size() - 1; k-- > 0;)
        acc = acc * s + p[k];
    return acc;
}

double factorial_moment(const Pmf& law, int k) {
    if (k < 1)
        throw std::invalid_argument("factorial_moment: k must be >= 1");
    const auto& p = law.probs();
    detail::KahanSum s;
    for (std::size_t j = static_cast<std::size_t>(k); j < p.size(); ++j) {
        double falling = 1.0;
        for (int i = 0; i < k; ++i)
            falling *= static_cast<double>(j - static_cast<std::size_t>(i));
        s.add(falling * p[j]);
    }
    return s.value();
}

double tv_distance(const Pmf& p, const Pmf& q) {
    std::size_t n = std::max(p.probs().size(), q.probs().size());
    detail::KahanSum s;
    for (std::size_t k = 0; k < n; ++k)
        s.add(std::fabs(p[k] - q[k]));
    return 0.5 * s.value();
}

double tv_lost_correction(const Pmf& p, const Pmf& q) {
    return 0.5 * (p.lost_mass() + q.lost_mass());
}

} // namespace bpve
