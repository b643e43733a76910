#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netgof/common.hpp"

namespace netgof {

// Simple undirected graph on nodes 0..n-1, no self loops, stored as a packed
// upper-triangular bit set. Immutable once built.
class Graph {
public:
    Graph() = default;
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return n_; }
    std::int64_t edge_count() const { return m_; }
    const std::vector<int>& degrees() const { return degrees_; }

    bool has_edge(int i, int j) const {
        if (i == j)
            return false;
        if (i > j)
            std::swap(i, j);
        std::size_t q = pair_index(n_, i, j);
        return (bits_[q >> 6] >> (q & 63)) & 1u;
    }

    // Visits every edge as (i,j) with i<j in lexicographic order.
    template <typename F>
    void for_each_edge(F&& f) const {
        std::size_t q = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j, ++q)
                if ((bits_[q >> 6] >> (q & 63)) & 1u)
                    f(i, j);
    }

    std::vector<std::vector<int>> adjacency() const;

private:
    friend class GraphBuilder;
    int n_ = 0;
    std::int64_t m_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<int> degrees_;
};

class GraphBuilder {
public:
    explicit GraphBuilder(int n);

    void add_edge(int i, int j); // idempotent, validates the pair
    Graph build();               // leaves the builder empty

private:
    int n_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct DegreeSummary {
    std::vector<int> degrees;
    std::int64_t edges = 0;     // number of edges
    std::int64_t wedges = 0;    // paths of length two, sum of C(d_i, 2)
    std::int64_t triangles = 0;
};

DegreeSummary summarize(const Graph& g);

} // namespace netgof
