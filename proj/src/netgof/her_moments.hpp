#pragma once

#include <cmath>

#include "netgof/graph.hpp"
#include "netgof/prob_matrix.hpp"

namespace netgof {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double sd() const { return std::sqrt(variance); }
};

// W = (1/n) sum_i (D_i - mu0_i)^2 with mu0_i the expected degrees under p0.
double w_statistic(const Graph& g, const ProbMatrix& p0);

// V = (1/n) sum_i (D_i - mean degree)^2.
double v_statistic(const Graph& g);

// Moments of W under independent edges with probabilities p, measured against
// the expected degrees of p0. All sums over triples and quadruples are reduced
// to row aggregates, so the cost is O(n^2).
Moments w_moments_her(const ProbMatrix& p, const ProbMatrix& p0);

// Same model and reference matrix (the null distribution of W).
Moments w_moments_null(const ProbMatrix& p0);

// Moments of V under independent edges with probabilities p.
Moments v_moments_her(const ProbMatrix& p);

// Closed forms of the V moments when every probability equals p.
Moments v_moments_er(int n, double p);

} // namespace netgof
