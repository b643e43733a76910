#pragma once

#include <vector>

#include "netgof/graph.hpp"
#include "netgof/graphon.hpp"
#include "netgof/prob_matrix.hpp"
#include "netgof/rng.hpp"

namespace netgof {

// Independent Bernoulli edges with the given probabilities. Pair (i,j) always
// consumes counter pair_index(n,i,j) of the stream, so the draw for a given
// pair is independent of traversal order.
Graph sample_her(const ProbMatrix& p, RngSpec rng);

struct EgSample {
    Graph graph;
    std::vector<double> latent; // node positions in [0,1]
};

// Exchangeable model: latent uniforms at counters 0..n-1, edge draws at
// n + pair_index(n,i,j).
EgSample sample_eg(const Graphon& phi, int n, RngSpec rng);

// Edge probabilities of the exchangeable model conditional on node positions.
ProbMatrix conditional_matrix(const Graphon& phi, const std::vector<double>& latent);

// Multiplies every probability by n^-a (a >= 0).
ProbMatrix sparsify_vanish(const ProbMatrix& p, double a, int n);
Graphon sparsify_vanish(const Graphon& phi, double a, int n);

// Keeps each entry independently with probability n^-b and zeroes the rest;
// one draw per unordered pair at counter pair_index(n,i,j).
ProbMatrix sparsify_thin(const ProbMatrix& p, double b, int n, RngSpec rng);

} // namespace netgof
