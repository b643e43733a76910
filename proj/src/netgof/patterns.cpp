#include "netgof/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netgof/quadrature.hpp"

namespace netgof {

namespace {

std::vector<Pattern> make_patterns() {
    auto make = [](int id, int nodes, std::vector<std::pair<int, int>> edges, int aut) {
        Pattern p;
        p.id = id;
        p.nodes = nodes;
        p.edges = std::move(edges);
        p.automorphisms = aut;
        p.degree_seq.assign(static_cast<std::size_t>(nodes), 0);
        for (const auto& [a, b] : p.edges) {
            ++p.degree_seq[static_cast<std::size_t>(a)];
            ++p.degree_seq[static_cast<std::size_t>(b)];
        }
        return p;
    };
    std::vector<Pattern> all;
    all.push_back(make(1, 2, {{0, 1}}, 2));                                 // edge
    all.push_back(make(2, 3, {{0, 1}, {0, 2}}, 2));                         // wedge
    all.push_back(make(3, 3, {{0, 1}, {0, 2}, {1, 2}}, 6));                 // triangle
    all.push_back(make(4, 4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}}, 2));         // paw
    all.push_back(make(5, 4, {{0, 1}, {0, 2}, {0, 3}}, 6));                 // 3-star
    all.push_back(make(6, 4, {{0, 1}, {1, 2}, {2, 3}}, 2));                 // 3-path
    all.push_back(make(7, 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 8));         // 4-cycle
    all.push_back(make(8, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, 2));         // 4-path
    all.push_back(make(9, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, 24));        // 4-star
    all.push_back(make(10, 5, {{0, 1}, {1, 2}, {2, 3}, {1, 4}}, 2));        // chair
    return all;
}

const std::vector<Pattern>& patterns() {
    static const std::vector<Pattern> all = make_patterns();
    return all;
}

} // namespace

const Pattern& pattern(int j) {
    if (j < 1 || j > kPatternCount)
        fail(errc::invalid_argument, "pattern id must be 1..10, got " + std::to_string(j));
    return patterns()[static_cast<std::size_t>(j - 1)];
}

double phi_sbm(const std::vector<double>& alpha, const std::vector<std::vector<double>>& pi, int j) {
    const Pattern& pat = pattern(j);
    std::size_t k = alpha.size();
    if (k == 0)
        fail(errc::invalid_argument, "need at least one group");
    double total = 0.0;
    for (double a : alpha) {
        if (!(a >= 0.0))
            fail(errc::range, "group weights must be nonnegative");
        total += a;
    }
    if (std::abs(total - 1.0) > 1e-9)
        fail(errc::range, "group weights must sum to 1");
    if (pi.size() != k)
        fail(errc::dimension, "pi must be K x K");
    for (std::size_t a = 0; a < k; ++a) {
        if (pi[a].size() != k)
            fail(errc::dimension, "pi must be K x K");
        for (std::size_t b = 0; b < k; ++b)
            if (pi[a][b] != pi[b][a])
                fail(errc::invalid_argument, "pi must be symmetric");
    }

    // Exact sum over the K^p block assignments of the pattern nodes.
    std::vector<std::size_t> assign(static_cast<std::size_t>(pat.nodes), 0);
    KahanSum sum;
    for (;;) {
        double w = 1.0;
        for (std::size_t u = 0; u < assign.size(); ++u)
            w *= alpha[assign[u]];
        if (w != 0.0)
            for (const auto& [a, b] : pat.edges)
                w *= pi[assign[static_cast<std::size_t>(a)]][assign[static_cast<std::size_t>(b)]];
        sum.add(w);
        std::size_t pos = 0;
        while (pos < assign.size() && ++assign[pos] == k) {
            assign[pos] = 0;
            ++pos;
        }
        if (pos == assign.size())
            break;
    }
    return sum.value();
}

double phi_edd(const std::vector<double>& g_moments, int j) {
    const Pattern& pat = pattern(j);
    double out = 1.0;
    for (int d : pat.degree_seq) {
        if (d < 1 || static_cast<std::size_t>(d) > g_moments.size())
            fail(errc::invalid_argument, "pattern needs g moment of order " + std::to_string(d) +
                                             " but only " + std::to_string(g_moments.size()) +
                                             " supplied");
        out *= g_moments[static_cast<std::size_t>(d - 1)];
    }
    return out;
}

namespace {

PhiEstimate phi_quadrature(const Graphon& phi, int j, long budget) {
    const Pattern& pat = pattern(j);
    int m = budget > 0 ? static_cast<int>(budget) : 64;
    const auto& rule = gauss_legendre(m);
    std::size_t mm = static_cast<std::size_t>(m);

    // Kernel values on the tensor grid, then contraction over node indices.
    std::vector<double> kern(mm * mm);
    for (std::size_t a = 0; a < mm; ++a)
        for (std::size_t b = 0; b < mm; ++b)
            kern[a * mm + b] = phi(rule.nodes[a], rule.nodes[b]);

    PhiEstimate est;
    if (pat.nodes == 2) {
        KahanSum s;
        for (std::size_t a = 0; a < mm; ++a)
            for (std::size_t b = 0; b < mm; ++b)
                s.add(rule.weights[a] * rule.weights[b] * kern[a * mm + b]);
        est.value = s.value();
        return est;
    }
    if (pat.nodes == 3) {
        KahanSum s;
        for (std::size_t a = 0; a < mm; ++a)
            for (std::size_t b = 0; b < mm; ++b) {
                double wab = rule.weights[a] * rule.weights[b];
                for (std::size_t c = 0; c < mm; ++c) {
                    double f = 1.0;
                    const std::size_t idx[3] = {a, b, c};
                    for (const auto& [x, y] : pat.edges)
                        f *= kern[idx[static_cast<std::size_t>(x)] * mm + idx[static_cast<std::size_t>(y)]];
                    s.add(wab * rule.weights[c] * f);
                }
            }
        est.value = s.value();
        return est;
    }
    fail(errc::invalid_argument, "tensor quadrature supports patterns on at most 3 nodes");
}

PhiEstimate phi_montecarlo(const Graphon& phi, int j, long budget, RngSpec rng) {
    const Pattern& pat = pattern(j);
    long samples = budget > 0 ? budget : 1000000;
    if (samples < 100)
        fail(errc::invalid_argument, "Monte-Carlo budget below 100 samples");

    std::size_t p = static_cast<std::size_t>(pat.nodes);
    KahanSum sum, sum_sq;
    double u[5];
    for (long s = 0; s < samples; ++s) {
        std::uint64_t base = static_cast<std::uint64_t>(s) * p;
        for (std::size_t t = 0; t < p; ++t)
            u[t] = rng::u01(rng, base + t);
        double f = 1.0, fa = 1.0; // antithetic pair
        for (const auto& [x, y] : pat.edges) {
            f *= phi(u[static_cast<std::size_t>(x)], u[static_cast<std::size_t>(y)]);
            fa *= phi(1.0 - u[static_cast<std::size_t>(x)], 1.0 - u[static_cast<std::size_t>(y)]);
        }
        double val = 0.5 * (f + fa);
        sum.add(val);
        sum_sq.add(val * val);
    }
    PhiEstimate est;
    double ns = static_cast<double>(samples);
    est.value = sum.value() / ns;
    double var = std::max(0.0, sum_sq.value() / ns - est.value * est.value);
    est.std_error = std::sqrt(var / ns);
    return est;
}

int max_pattern_degree(const Pattern& pat) {
    return *std::max_element(pat.degree_seq.begin(), pat.degree_seq.end());
}

} // namespace

PhiEstimate phi_graphon(const Graphon& phi, int j, PhiMethod method, long budget, RngSpec rng) {
    const Pattern& pat = pattern(j);
    if (method == PhiMethod::montecarlo)
        return phi_montecarlo(phi, j, budget, rng);
    if (method == PhiMethod::quadrature) {
        if (pat.nodes <= 3)
            return phi_quadrature(phi, j, budget);
        return phi_montecarlo(phi, j, 0, rng);
    }

    // Automatic: exploit structure, fall back to numerical integration.
    switch (phi.kind()) {
    case Graphon::Kind::constant:
        return {std::pow(phi.constant_value(), static_cast<double>(pat.edges.size())), 0.0};
    case Graphon::Kind::block:
        return {phi_sbm(phi.alpha(), phi.pi(), j), 0.0};
    case Graphon::Kind::product: {
        std::vector<double> g(static_cast<std::size_t>(max_pattern_degree(pat)));
        for (std::size_t k = 0; k < g.size(); ++k)
            g[k] = phi.g_moment(static_cast<int>(k) + 1);
        return {phi_edd(g, j), 0.0};
    }
    case Graphon::Kind::scaled: {
        PhiEstimate base = phi_graphon(phi.base(), j, method, budget, rng);
        double f = std::pow(phi.factor(), static_cast<double>(pat.edges.size()));
        return {f * base.value, f * base.std_error};
    }
    case Graphon::Kind::grid:
        if (pat.nodes <= 3)
            return phi_quadrature(phi, j, budget);
        return phi_montecarlo(phi, j, budget, rng);
    case Graphon::Kind::pointwise:
        return phi_montecarlo(phi, j, budget, rng);
    }
    fail(errc::numeric, "unreachable kernel kind");
}

PhiVector phi_vector(const Graphon& phi, PhiMethod method, long budget, RngSpec rng) {
    PhiVector out;
    for (int j = 1; j <= kPatternCount; ++j) {
        PhiEstimate e = phi_graphon(phi, j, method, budget, rng.with_stream(rng.stream + static_cast<std::uint64_t>(j)));
        out.value[static_cast<std::size_t>(j - 1)] = e.value;
        out.std_error[static_cast<std::size_t>(j - 1)] = e.std_error;
    }
    // An occurrence of the triangle contains a wedge, which contains an edge,
    // so the first three probabilities must be ordered (up to MC noise).
    double slack21 = 4.0 * (out.std_error[0] + out.std_error[1]) + 1e-12;
    double slack32 = 4.0 * (out.std_error[1] + out.std_error[2]) + 1e-12;
    if (out.value[1] > out.value[0] + slack21 || out.value[2] > out.value[1] + slack32)
        fail(errc::numeric, "pattern probabilities violate the containment ordering");
    return out;
}

std::int64_t count_pattern(const Graph& g, int j) {
    const Pattern& pat = pattern(j);
    int n = g.node_count();
    if (n < pat.nodes)
        return 0;

    if (j == 1)
        return g.edge_count();
    if (j == 2 || j == 3) {
        DegreeSummary s = summarize(g);
        return j == 2 ? s.wedges : s.triangles;
    }

    // Backtracking over injective edge-preserving maps; pattern nodes are
    // ordered so each one attaches to an earlier node.
    auto adj = g.adjacency();
    std::size_t p = static_cast<std::size_t>(pat.nodes);
    std::vector<std::vector<int>> earlier(p);
    for (const auto& [a, b] : pat.edges)
        earlier[static_cast<std::size_t>(std::max(a, b))].push_back(std::min(a, b));

    std::vector<int> map(p, -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::int64_t injections = 0;

    auto extend = [&](auto&& self, std::size_t t) -> void {
        if (t == p) {
            ++injections;
            return;
        }
        const auto& req = earlier[t];
        if (req.empty()) {
            for (int v = 0; v < n; ++v) {
                if (used[static_cast<std::size_t>(v)])
                    continue;
                used[static_cast<std::size_t>(v)] = 1;
                map[t] = v;
                self(self, t + 1);
                used[static_cast<std::size_t>(v)] = 0;
            }
            return;
        }
        int anchor = map[static_cast<std::size_t>(req[0])];
        for (int v : adj[static_cast<std::size_t>(anchor)]) {
            if (used[static_cast<std::size_t>(v)])
                continue;
            bool ok = true;
            for (std::size_t r = 1; r < req.size() && ok; ++r)
                ok = g.has_edge(map[static_cast<std::size_t>(req[r])], v);
            if (!ok)
                continue;
            used[static_cast<std::size_t>(v)] = 1;
            map[t] = v;
            self(self, t + 1);
            used[static_cast<std::size_t>(v)] = 0;
        }
    };
    extend(extend, 0);

    if (injections % pat.automorphisms != 0)
        fail(errc::numeric, "injection count not divisible by the automorphism count");
    return injections / pat.automorphisms;
}

double binomial_coefficient(int n, int k) {
    if (k < 0 || n < 0)
        fail(errc::invalid_argument, "negative binomial arguments");
    if (k > n)
        return 0.0;
    k = std::min(k, n - k);
    unsigned __int128 num = 1;
    for (int t = 0; t < k; ++t)
        num *= static_cast<unsigned>(n - t);
    unsigned __int128 den = 1;
    for (int t = 2; t <= k; ++t)
        den *= static_cast<unsigned>(t);
    return static_cast<double>(num / den);
}

double p_hat(const Graph& g, int j) {
    const Pattern& pat = pattern(j);
    double labeled_copies = 1.0; // p! / automorphisms
    for (int t = 2; t <= pat.nodes; ++t)
        labeled_copies *= t;
    labeled_copies /= pat.automorphisms;
    double denom = binomial_coefficient(g.node_count(), pat.nodes) * labeled_copies;
    if (denom == 0.0)
        fail(errc::invalid_argument, "graph smaller than the pattern");
    return static_cast<double>(count_pattern(g, j)) / denom;
}

double p_hat_normalized(const Graph& g, int j, double phi1_hat) {
    if (!(phi1_hat > 0.0))
        fail(errc::degenerate, "empirical edge density is zero; normalized frequency undefined");
    const Pattern& pat = pattern(j);
    return std::pow(phi1_hat, -static_cast<double>(pat.edges.size())) * p_hat(g, j);
}

} // namespace netgof
