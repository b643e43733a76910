#include "netgof/her_moments.hpp"

#include <string>
#include <vector>

namespace netgof {

namespace {

void check_same_n(int a, int b, const char* what) {
    if (a != b)
        fail(errc::dimension, std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                                  std::to_string(b) + ")");
}

// Sum over ordered centers i of all products x_ij x_ik with j<k, j,k != i,
// from per-row sums and per-row sums of squares. Equals the sum over triples
// i<j<k of the three adjacent products.
double adjacent_pair_sum(const std::vector<double>& row_sum, const std::vector<double>& row_sq_sum) {
    KahanSum t;
    for (std::size_t i = 0; i < row_sum.size(); ++i)
        t.add(0.5 * (row_sum[i] * row_sum[i] - row_sq_sum[i]));
    return t.value();
}

} // namespace

double w_statistic(const Graph& g, const ProbMatrix& p0) {
    check_same_n(g.node_count(), p0.node_count(), "w statistic");
    int n = g.node_count();
    auto mu = p0.row_sums();
    const auto& deg = g.degrees();
    KahanSum s;
    for (int i = 0; i < n; ++i) {
        double d = deg[static_cast<std::size_t>(i)] - mu[static_cast<std::size_t>(i)];
        s.add(d * d);
    }
    return s.value() / n;
}

double v_statistic(const Graph& g) {
    int n = g.node_count();
    const auto& deg = g.degrees();
    double mean = 2.0 * static_cast<double>(g.edge_count()) / n;
    KahanSum s;
    for (int i = 0; i < n; ++i) {
        double d = deg[static_cast<std::size_t>(i)] - mean;
        s.add(d * d);
    }
    return s.value() / n;
}

Moments w_moments_her(const ProbMatrix& p, const ProbMatrix& p0) {
    check_same_n(p.node_count(), p0.node_count(), "w moments");
    int n = p.node_count();
    std::size_t nn = static_cast<std::size_t>(n);

    std::vector<double> delta_sum(nn, 0.0), delta_sq_sum(nn, 0.0);
    std::vector<double> sig_sum(nn, 0.0), sig_sq_sum(nn, 0.0);
    {
        std::vector<KahanSum> ds(nn), dq(nn), ss(nn), sq(nn);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double pij = p(i, j);
                double d = pij - p0(i, j);
                double s2 = pij * (1.0 - pij);
                ds[static_cast<std::size_t>(i)].add(d);
                ds[static_cast<std::size_t>(j)].add(d);
                dq[static_cast<std::size_t>(i)].add(d * d);
                dq[static_cast<std::size_t>(j)].add(d * d);
                ss[static_cast<std::size_t>(i)].add(s2);
                ss[static_cast<std::size_t>(j)].add(s2);
                sq[static_cast<std::size_t>(i)].add(s2 * s2);
                sq[static_cast<std::size_t>(j)].add(s2 * s2);
            }
        for (std::size_t i = 0; i < nn; ++i) {
            delta_sum[i] = ds[i].value();
            delta_sq_sum[i] = dq[i].value();
            sig_sum[i] = ss[i].value();
            sig_sq_sum[i] = sq[i].value();
        }
    }

    KahanSum pair_mean_term; // sum over pairs of sigma^2 + delta^2
    KahanSum pair_var_term;  // sum over pairs of sigma^2 (1 - 2 p + Delta_i + Delta_j)^2
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double pij = p(i, j);
            double d = pij - p0(i, j);
            double s2 = pij * (1.0 - pij);
            pair_mean_term.add(s2 + d * d);
            double c = 1.0 - 2.0 * pij + delta_sum[static_cast<std::size_t>(i)] +
                       delta_sum[static_cast<std::size_t>(j)];
            pair_var_term.add(s2 * c * c);
        }

    double triple_delta = adjacent_pair_sum(delta_sum, delta_sq_sum);
    double triple_sigma = adjacent_pair_sum(sig_sum, sig_sq_sum);

    Moments m;
    m.mean = 2.0 / n * (pair_mean_term.value() + triple_delta);
    m.variance = 4.0 / (static_cast<double>(n) * n) * (pair_var_term.value() + triple_sigma);
    return m;
}

Moments w_moments_null(const ProbMatrix& p0) { return w_moments_her(p0, p0); }

Moments v_moments_her(const ProbMatrix& p) {
    int n = p.node_count();
    std::size_t nn = static_cast<std::size_t>(n);
    if (n < 2)
        fail(errc::invalid_argument, "degree variance needs at least 2 nodes");

    std::vector<double> rho(nn, 0.0), rho_sq(nn, 0.0);   // row sums of p and p^2
    std::vector<double> sig(nn, 0.0), sig_sq(nn, 0.0);   // row sums of sigma^2 and sigma^4
    {
        std::vector<KahanSum> r(nn), r2(nn), s(nn), s2(nn);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double pij = p(i, j);
                double v = pij * (1.0 - pij);
                r[static_cast<std::size_t>(i)].add(pij);
                r[static_cast<std::size_t>(j)].add(pij);
                r2[static_cast<std::size_t>(i)].add(pij * pij);
                r2[static_cast<std::size_t>(j)].add(pij * pij);
                s[static_cast<std::size_t>(i)].add(v);
                s[static_cast<std::size_t>(j)].add(v);
                s2[static_cast<std::size_t>(i)].add(v * v);
                s2[static_cast<std::size_t>(j)].add(v * v);
            }
        for (std::size_t i = 0; i < nn; ++i) {
            rho[i] = r[i].value();
            rho_sq[i] = r2[i].value();
            sig[i] = s[i].value();
            sig_sq[i] = s2[i].value();
        }
    }

    KahanSum sum_p, sum_p2, sum_s, sum_s2;
    for (std::size_t i = 0; i < nn; ++i) {
        sum_p.add(rho[i]);
        sum_p2.add(rho_sq[i]);
        sum_s.add(sig[i]);
        sum_s2.add(sig_sq[i]);
    }
    double s1 = 0.5 * sum_p.value();        // sum over pairs of p
    double s1_sq = 0.5 * sum_p2.value();    // sum over pairs of p^2
    double sig1 = 0.5 * sum_s.value();      // sum over pairs of sigma^2
    double sig1_sq = 0.5 * sum_s2.value();  // sum over pairs of sigma^4

    double triple_p = adjacent_pair_sum(rho, rho_sq);
    double triple_sig = adjacent_pair_sum(sig, sig_sq);
    // Pairs of vertex-disjoint index pairs: all unordered pairs minus the
    // adjacent ones.
    double quad_p = 0.5 * (s1 * s1 - s1_sq) - triple_p;
    double quad_sig = 0.5 * (sig1 * sig1 - sig1_sq) - triple_sig;

    double n2 = static_cast<double>(n) * n;
    double n4 = n2 * n2;

    Moments m;
    m.mean = 2.0 * (n - 2) / n2 * s1 + 2.0 * (n - 4) / n2 * triple_p - 8.0 / n2 * quad_p;

    KahanSum weighted; // sum over pairs of sigma^2 c_ij^2
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double pij = p(i, j);
            double v = pij * (1.0 - pij);
            double adj = rho[static_cast<std::size_t>(i)] + rho[static_cast<std::size_t>(j)] - 2.0 * pij;
            double rest = s1 - rho[static_cast<std::size_t>(i)] - rho[static_cast<std::size_t>(j)] + pij;
            double c = 4.0 * (n - 2) + 4.0 * (n - 4) * adj - 16.0 * rest;
            weighted.add(v * c * c);
        }
    m.variance = weighted.value() / (4.0 * n4) + 4.0 * (n - 4) * (n - 4) / n4 * triple_sig +
                 64.0 / n4 * quad_sig;
    return m;
}

Moments v_moments_er(int n, double p) {
    if (n < 2)
        fail(errc::invalid_argument, "degree variance needs at least 2 nodes");
    if (!(p >= 0.0 && p <= 1.0))
        fail(errc::range, "probability outside [0,1]");
    double q = 1.0 - p;
    double nd = n;
    Moments m;
    m.mean = (nd - 1.0) * (nd - 2.0) * p * q / nd;
    m.variance = 2.0 * (nd - 1.0) * (nd - 2.0) * (nd - 2.0) * p * q * (1.0 + (nd - 6.0) * p * q) /
                 (nd * nd * nd);
    return m;
}

} // namespace netgof
