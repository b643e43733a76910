#include "netgof/eg_moments.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace netgof {

namespace {

__int128 falling(int n, int i) {
    __int128 out = 1;
    for (int k = 0; k <= i; ++k)
        out *= n - k;
    return out;
}

} // namespace

EgMomentInputs make_eg_inputs(int n, double phi1_0, const PhiVector& phi) {
    if (n < 1)
        fail(errc::invalid_argument, "need at least one node");
    if (!(phi1_0 >= 0.0 && phi1_0 <= 1.0))
        fail(errc::range, "null edge probability outside [0,1]");
    EgMomentInputs in;
    in.n = n;
    in.phi1_0 = phi1_0;
    in.phi = phi;
    in.n1 = static_cast<double>(falling(n, 1));
    in.n2 = static_cast<double>(falling(n, 2));
    in.n3 = static_cast<double>(falling(n, 3));
    in.n4 = static_cast<double>(falling(n, 4));
    in.n5 = static_cast<double>(falling(n, 5));
    return in;
}

double w_phi_statistic(const Graph& g, double phi1_0) {
    if (!(phi1_0 >= 0.0 && phi1_0 <= 1.0))
        fail(errc::range, "null edge probability outside [0,1]");
    int n = g.node_count();
    double target = (n - 1) * phi1_0;
    KahanSum s;
    for (int d : g.degrees()) {
        double r = d - target;
        s.add(r * r);
    }
    return s.value() / n;
}

double w_phi_statistic_from_counts(int n, std::int64_t m1, std::int64_t m2, double phi1_0) {
    if (n < 1)
        fail(errc::invalid_argument, "need at least one node");
    double nm1 = n - 1.0;
    double c = 1.0 - 2.0 * nm1 * phi1_0;
    return (n * nm1 * nm1 * phi1_0 * phi1_0 + 2.0 * c * static_cast<double>(m1) +
            2.0 * static_cast<double>(m2)) /
           n;
}

MMoments m_moments(const EgMomentInputs& in) {
    const PhiVector& f = in.phi;
    MMoments m;
    m.em1 = in.n1 / 2.0 * f.phi(1);
    m.em2 = in.n2 / 2.0 * f.phi(2);
    m.em1_sq = in.n1 / 2.0 * f.phi(1) + in.n2 * f.phi(2) + in.n3 / 4.0 * f.phi(1) * f.phi(1);
    m.em1_m2 = in.n2 / 2.0 * (2.0 * f.phi(2) + f.phi(3)) + in.n3 / 2.0 * (f.phi(5) + 2.0 * f.phi(6)) +
               in.n4 / 4.0 * f.phi(1) * f.phi(2);
    m.em2_sq = in.n2 / 6.0 * (3.0 * f.phi(2) + 6.0 * f.phi(3)) +
               in.n3 / 2.0 * (4.0 * f.phi(4) + 2.0 * f.phi(5) + 2.0 * f.phi(6) + f.phi(7)) +
               in.n4 / 4.0 * (4.0 * f.phi(8) + f.phi(9) + 4.0 * f.phi(10)) +
               in.n5 / 4.0 * f.phi(2) * f.phi(2);
    return m;
}

Moments w_phi_moments(const EgMomentInputs& in) {
    int n = in.n;
    if (n < 1)
        fail(errc::invalid_argument, "need at least one node");
    const PhiVector& f = in.phi;
    double nm1 = n - 1.0;
    double c = 1.0 - 2.0 * nm1 * in.phi1_0;

    Moments out;
    out.mean =
        (n * nm1 * nm1 * in.phi1_0 * in.phi1_0 + c * in.n1 * f.phi(1) + in.n2 * f.phi(2)) / n;

    MMoments m = m_moments(in);
    double lin_mean = c * m.em1 + m.em2;
    double lin_sq = c * c * m.em1_sq + 2.0 * c * m.em1_m2 + m.em2_sq;
    double raw = 4.0 / (static_cast<double>(n) * n) * (lin_sq - lin_mean * lin_mean);

    // Expanded form with the quadratic-coefficient differences taken over the
    // integers, which keeps full precision where the raw route cancels.
    double d1 = static_cast<double>(falling(n, 3) - falling(n, 1) * falling(n, 1));
    double d2 = static_cast<double>(falling(n, 4) - falling(n, 1) * falling(n, 2));
    double d3 = static_cast<double>(falling(n, 5) - falling(n, 2) * falling(n, 2));
    double var_m1 = in.n1 / 2.0 * f.phi(1) + in.n2 * f.phi(2) + d1 / 4.0 * f.phi(1) * f.phi(1);
    double cov_m1_m2 = in.n2 / 2.0 * (2.0 * f.phi(2) + f.phi(3)) +
                       in.n3 / 2.0 * (f.phi(5) + 2.0 * f.phi(6)) + d2 / 4.0 * f.phi(1) * f.phi(2);
    double var_m2 = in.n2 / 6.0 * (3.0 * f.phi(2) + 6.0 * f.phi(3)) +
                    in.n3 / 2.0 * (4.0 * f.phi(4) + 2.0 * f.phi(5) + 2.0 * f.phi(6) + f.phi(7)) +
                    in.n4 / 4.0 * (4.0 * f.phi(8) + f.phi(9) + 4.0 * f.phi(10)) +
                    d3 / 4.0 * f.phi(2) * f.phi(2);
    double expanded =
        (4.0 * c * c * var_m1 + 8.0 * c * cov_m1_m2 + 4.0 * var_m2) / (static_cast<double>(n) * n);

    // Scale of the terms the raw route subtracts, used to bound its roundoff.
    double mag = 4.0 / (static_cast<double>(n) * n) *
                 (c * c * m.em1_sq + 2.0 * std::abs(c) * std::abs(m.em1_m2) + m.em2_sq +
                  lin_mean * lin_mean);
    double tol = 1e-9 * std::max(std::abs(expanded), std::abs(raw)) +
                 1e3 * std::numeric_limits<double>::epsilon() * mag;
    if (std::abs(raw - expanded) > tol)
        fail(errc::numeric, "variance assemblies disagree beyond tolerance");
    if (raw < 0.0) {
        if (raw < -tol)
            fail(errc::numeric, "assembled variance is negative");
        raw = 0.0;
    }
    out.variance = raw;
    return out;
}

PhiVector phi_vector_cached(const Graphon& phi, PhiMethod method, long budget, RngSpec rng) {
    static std::map<std::string, PhiVector> cache;
    static std::mutex cache_mutex;
    std::string key = phi.fingerprint() + "|" + std::to_string(static_cast<int>(method)) + "|" +
                      std::to_string(budget) + "|" + std::to_string(rng.seed) + "|" +
                      std::to_string(rng.stream);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    PhiVector out;
    if (method == PhiMethod::automatic && !phi.empty() && phi.kind() == Graphon::Kind::scaled) {
        // Share the base kernel's integrals across different scale factors.
        PhiVector base = phi_vector_cached(phi.base(), method, budget, rng);
        double f = phi.factor();
        for (int j = 1; j <= kPatternCount; ++j) {
            double fe = std::pow(f, static_cast<double>(pattern(j).edges.size()));
            out.value[static_cast<std::size_t>(j - 1)] = fe * base.value[static_cast<std::size_t>(j - 1)];
            out.std_error[static_cast<std::size_t>(j - 1)] =
                fe * base.std_error[static_cast<std::size_t>(j - 1)];
        }
    } else {
        out = phi_vector(phi, method, budget, rng);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(key, out);
    return out;
}

Moments null_moments(const Graphon& phi0, int n, PhiMethod method, long budget, RngSpec rng) {
    PhiVector phi = phi_vector_cached(phi0, method, budget, rng);
    return w_phi_moments(make_eg_inputs(n, phi.phi(1), phi));
}

} // namespace netgof
