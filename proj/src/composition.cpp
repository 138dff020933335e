#include "bpve/composition.hpp"

#include <stdexcept>
#include <vector>

namespace bpve {

namespace {

void check_range(std::int64_t j, std::int64_t n, double s) {
    if (j < 0 || j > n)
        throw std::invalid_argument("composition: need 0 <= j <= n");
    if (!(s >= 0.0 && s <= 1.0))
        throw std::domain_error("composition: s outside [0,1]");
}

} // namespace

double tail_compose(const EnvironmentSpec& env, std::int64_t j, std::int64_t n,
                    double s) {
    check_range(j, n, s);
    double t = s;
    for (std::int64_t k = n; k > j; --k)
        t = eval_pgf(env.offspring_at(k).pmf(), t);
    return t;
}

double mean_product(const EnvironmentSpec& env, std::int64_t j,
                    std::int64_t n) {
    if (j < 0 || j > n)
        throw std::invalid_argument("mean_product: need 0 <= j <= n");
    double prod = 1.0;
    for (std::int64_t i = j + 1; i <= n; ++i)
        prod *= env.offspring_at(i).mean();
    return prod;
}

double phi_composite(const EnvironmentSpec& env, std::int64_t j, std::int64_t n,
                     double s) {
    check_range(j, n, s);
    if (j == n)
        return 0.0;
    // t[k - j] = f_{k,n}(s) for k = j..n
    std::vector<double> t(static_cast<std::size_t>(n - j) + 1);
    t[static_cast<std::size_t>(n - j)] = s;
    for (std::int64_t k = n; k > j; --k)
        t[static_cast<std::size_t>(k - j - 1)] =
            eval_pgf(env.offspring_at(k).pmf(), t[static_cast<std::size_t>(k - j)]);

    detail::KahanSum sum;
    double mean_prod = 1.0; // mean_{j,k-1}
    for (std::int64_t k = j + 1; k <= n; ++k) {
        OffspringLaw law = env.offspring_at(k);
        sum.add(shape_function(law, t[static_cast<std::size_t>(k - j)]) /
                mean_prod);
        mean_prod *= law.mean();
    }
    return sum.value();
}

} // namespace bpve
