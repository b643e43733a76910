#pragma once

#include <cstdint>

#include "netgof/graph.hpp"
#include "netgof/graphon.hpp"
#include "netgof/her_moments.hpp"
#include "netgof/patterns.hpp"

namespace netgof {

// Inputs for the degree statistic moments under an exchangeable model:
// the null marginal edge probability, the true-model pattern probabilities
// and the falling factorials n_i = n(n-1)...(n-i).
struct EgMomentInputs {
    int n = 0;
    double phi1_0 = 0.0;
    PhiVector phi;
    double n1 = 0.0, n2 = 0.0, n3 = 0.0, n4 = 0.0, n5 = 0.0;
};

EgMomentInputs make_eg_inputs(int n, double phi1_0, const PhiVector& phi);

// (1/n) sum_i (D_i - (n-1)*phi1_0)^2, straight from the degrees.
double w_phi_statistic(const Graph& g, double phi1_0);

// The same value assembled from the edge count m1 and wedge count m2:
// n^-1 [ n(n-1)^2 phi1_0^2 + 2(1-2(n-1)phi1_0) m1 + 2 m2 ].
double w_phi_statistic_from_counts(int n, std::int64_t m1, std::int64_t m2, double phi1_0);

struct MMoments {
    double em1 = 0.0;    // E M1
    double em2 = 0.0;    // E M2
    double em1_sq = 0.0; // E M1^2
    double em1_m2 = 0.0; // E M1 M2
    double em2_sq = 0.0; // E M2^2
};

// Moments of the edge count M1 and wedge count M2 of an exchangeable graph.
MMoments m_moments(const EgMomentInputs& in);

// Mean and variance of the degree statistic under the model with pattern
// probabilities in.phi, tested against the null marginal in.phi1_0. The
// variance is assembled twice (expanded display and raw second moments of
// c*M1 + M2) and the two routes are cross-checked before returning.
Moments w_phi_moments(const EgMomentInputs& in);

// phi_vector with results memoized per kernel fingerprint, method, budget and
// generator, so repeated tests against one null pay for the integrals once.
PhiVector phi_vector_cached(const Graphon& phi, PhiMethod method = PhiMethod::automatic,
                            long budget = 0, RngSpec rng = RngSpec{0x67606f66u, 0});

// Null-model moments: pattern probabilities of phi0 feed w_phi_moments with
// phi1_0 taken from phi0 itself.
Moments null_moments(const Graphon& phi0, int n, PhiMethod method = PhiMethod::automatic,
                     long budget = 0, RngSpec rng = RngSpec{0x67606f66u, 0});

} // namespace netgof
