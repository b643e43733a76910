#include "netgof/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "netgof/common.hpp"

namespace netgof {

namespace {

GaussLegendre build_rule(int m) {
    // Roots of the Legendre polynomial by Newton iteration from the Chebyshev
    // initial guess, then mapped from [-1,1] to [0,1].
    GaussLegendre rule;
    rule.nodes.resize(static_cast<std::size_t>(m));
    rule.weights.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        double x = std::cos(M_PI * (k + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= m; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        rule.nodes[static_cast<std::size_t>(k)] = 0.5 * (1.0 - x); // descending roots -> ascending nodes
        rule.weights[static_cast<std::size_t>(k)] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

} // namespace

const GaussLegendre& gauss_legendre(int m) {
    if (m < 2)
        fail(errc::invalid_argument, "quadrature needs at least 2 nodes");
    static std::map<int, GaussLegendre> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> guard(mutex);
    auto it = cache.find(m);
    if (it == cache.end())
        it = cache.emplace(m, build_rule(m)).first;
    return it->second;
}

} // namespace netgof
