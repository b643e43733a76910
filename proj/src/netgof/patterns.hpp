#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "netgof/graph.hpp"
#include "netgof/graphon.hpp"
#include "netgof/rng.hpp"

namespace netgof {

// The ten small connected shapes whose occurrence probabilities drive the
// degree moment formulas for exchangeable models: edge, wedge, triangle, paw,
// 3-star, 3-path, 4-cycle, 4-path, 4-star and the chair (a 3-path with an
// extra leaf on its second node).
inline constexpr int kPatternCount = 10;

struct Pattern {
    int id;                                      // 1-based
    int nodes;
    std::vector<std::pair<int, int>> edges;      // local node ids, i<j
    std::vector<int> degree_seq;
    int automorphisms;
};

const Pattern& pattern(int j);

// Occurrence probability of pattern j (all its edges present, the rest free).
struct PhiEstimate {
    double value = 0.0;
    double std_error = 0.0; // 0 when computed exactly
};

// Exact sum over block assignments.
double phi_sbm(const std::vector<double>& alpha, const std::vector<std::vector<double>>& pi, int j);

// Product over pattern nodes of the g-moment of the node degree;
// g_moments[k-1] holds the k-th moment of g.
double phi_edd(const std::vector<double>& g_moments, int j);

enum class PhiMethod {
    automatic,  // closed forms where the structure allows, otherwise quadrature/MC
    quadrature, // tensor Gauss-Legendre up to 3 pattern nodes, MC beyond
    montecarlo, // always Monte-Carlo with antithetic pairs
};

PhiEstimate phi_graphon(const Graphon& phi, int j, PhiMethod method = PhiMethod::automatic,
                        long budget = 0, RngSpec rng = RngSpec{0x67606f66u, 0});

struct PhiVector {
    std::array<double, kPatternCount> value{};
    std::array<double, kPatternCount> std_error{};

    double phi(int j) const { return value[static_cast<std::size_t>(j - 1)]; }
};

// All ten probabilities with the given method; validates the chain
// phi_3 <= phi_2 <= phi_1 up to Monte-Carlo noise.
PhiVector phi_vector(const Graphon& phi, PhiMethod method = PhiMethod::automatic, long budget = 0,
                     RngSpec rng = RngSpec{0x67606f66u, 0});

// Non-induced occurrences: node subsets of size p_j admitting an
// edge-preserving copy of the pattern, one count per distinct copy.
std::int64_t count_pattern(const Graph& g, int j);

// Occurrence count normalized by C(n, p_j) times the number of labeled copies
// of the pattern on a fixed node set.
double p_hat(const Graph& g, int j);

// p_hat scaled by phi1_hat^(-edge count).
double p_hat_normalized(const Graph& g, int j, double phi1_hat);

double binomial_coefficient(int n, int k);

} // namespace netgof
