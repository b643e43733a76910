#include "netgof/sampling.hpp"

#include <cmath>

namespace netgof {

Graph sample_her(const ProbMatrix& p, RngSpec rng) {
    int n = p.node_count();
    GraphBuilder b(n);
    const auto& cells = p.cells();
    std::size_t q = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++q)
            if (rng::u01(rng, q) < cells[q])
                b.add_edge(i, j);
    return b.build();
}

EgSample sample_eg(const Graphon& phi, int n, RngSpec rng) {
    if (n <= 0)
        fail(errc::invalid_argument, "node count must be positive");
    phi.require_unit_range();
    EgSample out;
    out.latent.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.latent[static_cast<std::size_t>(i)] = rng::u01(rng, static_cast<std::uint64_t>(i));

    GraphBuilder b(n);
    std::uint64_t base = static_cast<std::uint64_t>(n);
    std::size_t q = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++q)
            if (rng::u01(rng, base + q) <
                phi(out.latent[static_cast<std::size_t>(i)], out.latent[static_cast<std::size_t>(j)]))
                b.add_edge(i, j);
    out.graph = b.build();
    return out;
}

ProbMatrix conditional_matrix(const Graphon& phi, const std::vector<double>& latent) {
    int n = static_cast<int>(latent.size());
    if (n <= 0)
        fail(errc::invalid_argument, "need at least one node position");
    phi.require_unit_range();
    ProbMatrix p(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            p.set(i, j, phi(latent[static_cast<std::size_t>(i)], latent[static_cast<std::size_t>(j)]));
    return p;
}

ProbMatrix sparsify_vanish(const ProbMatrix& p, double a, int n) {
    if (!(a >= 0.0))
        fail(errc::invalid_argument, "sparsity exponent must be >= 0");
    if (n <= 0)
        fail(errc::invalid_argument, "node count must be positive");
    double factor = std::pow(static_cast<double>(n), -a);
    ProbMatrix out(p.node_count());
    for (int i = 0; i < p.node_count(); ++i)
        for (int j = i + 1; j < p.node_count(); ++j)
            out.set(i, j, p(i, j) * factor);
    return out;
}

Graphon sparsify_vanish(const Graphon& phi, double a, int n) {
    if (!(a >= 0.0))
        fail(errc::invalid_argument, "sparsity exponent must be >= 0");
    if (n <= 0)
        fail(errc::invalid_argument, "node count must be positive");
    if (a == 0.0)
        return phi;
    return Graphon::scaled(phi, std::pow(static_cast<double>(n), -a));
}

ProbMatrix sparsify_thin(const ProbMatrix& p, double b, int n, RngSpec rng) {
    if (!(b >= 0.0))
        fail(errc::invalid_argument, "thinning exponent must be >= 0");
    if (n <= 0)
        fail(errc::invalid_argument, "node count must be positive");
    double keep = std::pow(static_cast<double>(n), -b);
    int nn = p.node_count();
    ProbMatrix out(nn);
    std::size_t q = 0;
    for (int i = 0; i < nn; ++i)
        for (int j = i + 1; j < nn; ++j, ++q)
            if (rng::u01(rng, q) < keep)
                out.set(i, j, p(i, j));
    return out;
}

} // namespace netgof
