#include "netgof/graph.hpp"

#include <algorithm>
#include <string>

namespace netgof {

namespace {

void check_pair(int n, int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n)
        fail(errc::range, "node id out of range: (" + std::to_string(i) + "," + std::to_string(j) +
                              ") with n=" + std::to_string(n));
    if (i == j)
        fail(errc::invalid_argument, "self loop at node " + std::to_string(i));
}

} // namespace

GraphBuilder::GraphBuilder(int n) : n_(n) {
    if (n <= 0)
        fail(errc::invalid_argument, "graph needs a positive node count");
    bits_.assign((pair_count(n) + 63) / 64, 0);
}

void GraphBuilder::add_edge(int i, int j) {
    check_pair(n_, i, j);
    if (i > j)
        std::swap(i, j);
    std::size_t q = pair_index(n_, i, j);
    bits_[q >> 6] |= std::uint64_t{1} << (q & 63);
}

Graph GraphBuilder::build() {
    Graph g;
    g.n_ = n_;
    g.bits_ = std::move(bits_);
    g.degrees_.assign(static_cast<std::size_t>(n_), 0);
    std::size_t q = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j, ++q)
            if ((g.bits_[q >> 6] >> (q & 63)) & 1u) {
                ++g.degrees_[static_cast<std::size_t>(i)];
                ++g.degrees_[static_cast<std::size_t>(j)];
                ++g.m_;
            }
    bits_.clear();
    return g;
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    GraphBuilder b(n);
    for (const auto& [i, j] : edges)
        b.add_edge(i, j);
    return b.build();
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
        adj[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(degrees_[static_cast<std::size_t>(i)]));
    for_each_edge([&](int i, int j) {
        adj[static_cast<std::size_t>(i)].push_back(j);
        adj[static_cast<std::size_t>(j)].push_back(i);
    });
    return adj;
}

DegreeSummary summarize(const Graph& g) {
    DegreeSummary s;
    s.degrees = g.degrees();
    s.edges = g.edge_count();
    for (int d : s.degrees)
        s.wedges += static_cast<std::int64_t>(d) * (d - 1) / 2;

    // Count each triangle once at its lexicographically smallest edge.
    auto adj = g.adjacency();
    g.for_each_edge([&](int i, int j) {
        const auto& shorter =
            adj[static_cast<std::size_t>(i)].size() <= adj[static_cast<std::size_t>(j)].size()
                ? adj[static_cast<std::size_t>(i)]
                : adj[static_cast<std::size_t>(j)];
        int other = &shorter == &adj[static_cast<std::size_t>(i)] ? j : i;
        for (int k : shorter)
            if (k > j && g.has_edge(other, k))
                ++s.triangles;
    });
    return s;
}

} // namespace netgof
