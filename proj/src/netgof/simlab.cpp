#include "netgof/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "netgof/csv.hpp"
#include "netgof/eg_moments.hpp"
#include "netgof/gof_tests.hpp"
#include "netgof/her_moments.hpp"
#include "netgof/normal.hpp"
#include "netgof/parallel.hpp"
#include "netgof/sampling.hpp"

namespace netgof {

namespace {

// Stream purpose tags; cell ids and replicate indices fill the rest.
constexpr std::uint64_t kPurposeCovariates = 1;
constexpr std::uint64_t kPurposePowerSample = 2;
constexpr std::uint64_t kPurposeQqSample = 3;
constexpr std::uint64_t kPurposeThin = 4;
constexpr std::uint64_t kPurposeSizeSample = 5;

constexpr int kHerCovariates = 3;

// Mean off-diagonal probability of the logistic model a + predictor, as a
// function of the intercept a.
double mean_probability(double a, const std::vector<double>& predictor) {
    KahanSum s;
    for (double t : predictor)
        s.add(logistic(a + t));
    return s.value() / static_cast<double>(predictor.size());
}

double calibrate_intercept(double rho_star, const std::vector<double>& predictor) {
    if (!(rho_star > 0.0 && rho_star < 1.0))
        fail(errc::range, "target density must lie strictly between 0 and 1");
    double lo = -80.0, hi = 80.0;
    if (mean_probability(lo, predictor) > rho_star || mean_probability(hi, predictor) < rho_star)
        fail(errc::invalid_argument, "target density unreachable by intercept calibration");
    double mid = 0.0;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        double m = mean_probability(mid, predictor);
        if (std::abs(m - rho_star) <= 1e-10)
            return mid;
        (m < rho_star ? lo : hi) = mid;
    }
    return mid;
}

ProbMatrix logistic_matrix(int n, double intercept, const std::vector<double>& predictor) {
    ProbMatrix p(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            p.set(i, j, logistic(intercept + predictor[pair_index(n, i, j)]));
    return p;
}

} // namespace

HerDesign build_her_design(const HerDesignParams& params, RngSpec rng) {
    int n = params.n;
    if (n < 2)
        fail(errc::invalid_argument, "need at least two nodes");
    if (!(params.beta >= 0.0))
        fail(errc::range, "departure coefficient must be nonnegative");

    std::vector<double> node_cov(static_cast<std::size_t>(n) * kHerCovariates);
    for (std::size_t t = 0; t < node_cov.size(); ++t)
        node_cov[t] = rng::normal(rng, t);

    HerDesign design;
    design.params = params;
    design.covariates.d = kHerCovariates;
    design.covariates.names = {"x1", "x2", "x3"};
    design.covariates.rows.reserve(pair_count(n));

    const double scale = std::sqrt(M_PI) / 2.0; // gives each component mean 1
    std::size_t pairs = pair_count(n);
    std::vector<double> pred_alt(pairs), pred_null(pairs);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            CovariateTable::Row row;
            row.i = i;
            row.j = j;
            row.x.resize(kHerCovariates);
            for (int c = 0; c < kHerCovariates; ++c)
                row.x[static_cast<std::size_t>(c)] =
                    scale * std::abs(node_cov[static_cast<std::size_t>(i) * kHerCovariates + c] -
                                     node_cov[static_cast<std::size_t>(j) * kHerCovariates + c]);
            std::size_t q = pair_index(n, i, j);
            pred_null[q] = row.x[0] + row.x[1];
            pred_alt[q] = pred_null[q] + params.beta * row.x[2];
            design.covariates.rows.push_back(std::move(row));
        }

    design.intercept_alt = calibrate_intercept(params.rho_star, pred_alt);
    design.intercept_null = calibrate_intercept(params.rho_star, pred_null);
    design.p = logistic_matrix(n, design.intercept_alt, pred_alt);
    design.p0 = logistic_matrix(n, design.intercept_null, pred_null);
    if (std::abs(design.p.mean_offdiagonal() - params.rho_star) > 1e-6 ||
        std::abs(design.p0.mean_offdiagonal() - params.rho_star) > 1e-6)
        fail(errc::numeric, "calibrated design misses the target density");
    return design;
}

EgDesign build_eg_design(const EgDesignParams& params) {
    if (!(params.beta >= 1.0 && params.beta <= 2.0))
        fail(errc::range, "degree-imbalance exponent must lie in [1,2]");
    const std::vector<double> alpha = {0.5, 0.5};
    const std::vector<double> eta = {0.4, 0.5};
    std::vector<std::vector<double>> pi(2, std::vector<double>(2));
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
            pi[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
                eta[static_cast<std::size_t>(k)] * eta[static_cast<std::size_t>(l)];

    // With the contamination factor, the kernel keeps a product form, so its
    // edge density is the square of sum_k eta_k (c_k^beta - c_{k-1}^beta)
    // over the block boundaries c.
    auto density_factor = [&](double beta) {
        double cum = 0.0, s = 0.0;
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            double next = cum + alpha[k];
            s += eta[k] * (std::pow(next, beta) - std::pow(cum, beta));
            cum = next;
        }
        return s * s;
    };

    EgDesign design;
    design.params = params;
    if (!(params.rho_star > 0.0 && params.rho_star < 1.0))
        fail(errc::range, "target density must lie strictly between 0 and 1");
    design.rho = params.rho_star / density_factor(params.beta);
    double s0 = params.rho_star / density_factor(1.0);
    design.phi0 = Graphon::scaled(Graphon::block(alpha, pi), s0);
    design.phi0.require_unit_range();
    if (params.beta == 1.0) {
        design.phi = design.phi0;
    } else {
        Graphon imbalance = Graphon::product_power(params.beta, params.beta);
        design.phi = Graphon::scaled(
            Graphon::pointwise_product(Graphon::block(alpha, pi), imbalance), design.rho);
        design.phi.require_unit_range();
    }
    return design;
}

namespace {

struct CellKey {
    std::size_t index = 0;
};

void check_common(long replicates, double alpha) {
    if (replicates < 1)
        fail(errc::invalid_argument, "need at least one replicate");
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(errc::range, "level must lie strictly between 0 and 1");
}

} // namespace

std::vector<PowerCell> run_power_study(const PowerStudyParams& params) {
    check_common(params.replicates, params.alpha);
    if (params.n_grid.empty() || params.rho_grid.empty() || params.beta_grid.empty())
        fail(errc::invalid_argument, "empty parameter grid");

    std::vector<PowerCell> cells;
    std::uint64_t cell_id = 0;
    std::uint64_t base_id = 0; // one covariate draw per (n, rho), shared over beta
    double t_alpha = std_normal_quantile(1.0 - params.alpha);

    for (int n : params.n_grid) {
        for (double rho : params.rho_grid) {
            HerDesign her_base;
            if (params.design == StudyDesign::her) {
                HerDesignParams base_params{n, rho, 0.0};
                her_base = build_her_design(
                    base_params, RngSpec{params.seed, stream_id(kPurposeCovariates, base_id, 0)});
            }
            ++base_id;
            for (double beta : params.beta_grid) {
                PowerCell cell;
                cell.n = n;
                cell.rho_star = rho;
                cell.beta = beta;
                cell.replicates = params.replicates;

                std::vector<char> rejected(static_cast<std::size_t>(params.replicates), 0);
                if (params.design == StudyDesign::her) {
                    // Rebuild the alternative on the same covariates.
                    std::size_t pairs = pair_count(n);
                    std::vector<double> pred_alt(pairs);
                    for (const auto& row : her_base.covariates.rows)
                        pred_alt[pair_index(n, row.i, row.j)] =
                            row.x[0] + row.x[1] + beta * row.x[2];
                    double a = calibrate_intercept(rho, pred_alt);
                    ProbMatrix p = logistic_matrix(n, a, pred_alt);
                    const ProbMatrix& p0 = her_base.p0;

                    cell.power_analytic = power_her(p0, p, params.alpha);
                    Moments null_m = w_moments_null(p0);
                    double crit = null_m.mean + t_alpha * null_m.sd();
                    std::uint64_t id = cell_id;
                    parallel_for(params.replicates, params.threads, [&, id](std::int64_t r) {
                        Graph g = sample_her(
                            p, RngSpec{params.seed,
                                       stream_id(kPurposePowerSample, id,
                                                 static_cast<std::uint64_t>(r))});
                        rejected[static_cast<std::size_t>(r)] = w_statistic(g, p0) > crit;
                    });
                } else {
                    EgDesign design = build_eg_design({n, rho, beta});
                    cell.power_analytic = power_eg(design.phi0, design.phi, n, params.alpha);
                    Moments null_m = null_moments(design.phi0, n);
                    double phi1_0 = phi_vector_cached(design.phi0).phi(1);
                    double crit = null_m.mean + t_alpha * null_m.sd();
                    std::uint64_t id = cell_id;
                    parallel_for(params.replicates, params.threads, [&, id](std::int64_t r) {
                        EgSample s = sample_eg(
                            design.phi, n,
                            RngSpec{params.seed, stream_id(kPurposePowerSample, id,
                                                           static_cast<std::uint64_t>(r))});
                        rejected[static_cast<std::size_t>(r)] =
                            w_phi_statistic(s.graph, phi1_0) > crit;
                    });
                }

                long hits = 0;
                for (char c : rejected)
                    hits += c;
                cell.power_empirical =
                    static_cast<double>(hits) / static_cast<double>(params.replicates);
                cell.ci_halfwidth =
                    1.96 * std::sqrt(cell.power_analytic * (1.0 - cell.power_analytic) /
                                     static_cast<double>(params.replicates));
                cells.push_back(std::move(cell));
                ++cell_id;
            }
        }
    }
    return cells;
}

double ks_distance_normal(std::vector<double> values) {
    if (values.empty())
        fail(errc::invalid_argument, "no values for the distance");
    std::sort(values.begin(), values.end());
    double r = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        double cdf = std_normal_cdf(values[k]);
        d = std::max(d, (static_cast<double>(k) + 1.0) / r - cdf);
        d = std::max(d, cdf - static_cast<double>(k) / r);
    }
    return d;
}

std::vector<QqCell> run_qq_study(const QqStudyParams& params) {
    check_common(params.replicates, 0.05);
    if (params.n_grid.empty() || params.exponent_grid.empty())
        fail(errc::invalid_argument, "empty parameter grid");
    for (double e : params.exponent_grid)
        if (!(e >= 0.0))
            fail(errc::range, "sparsity exponent must be nonnegative");
    if (params.design == StudyDesign::eg && params.kind == SparseKind::thin)
        fail(errc::invalid_argument, "thinning is undefined for the exchangeable design");

    std::vector<QqCell> cells;
    std::uint64_t cell_id = 0;
    std::uint64_t base_id = 0;
    for (int n : params.n_grid) {
        ProbMatrix her_ref;
        Graphon eg_ref;
        if (params.design == StudyDesign::her) {
            her_ref = build_her_design(
                          {n, params.rho_star, 0.0},
                          RngSpec{params.seed, stream_id(kPurposeCovariates, base_id, 0)})
                          .p0;
        } else {
            eg_ref = build_eg_design({n, params.rho_star, 1.0}).phi0;
        }
        ++base_id;

        for (double exponent : params.exponent_grid) {
            QqCell cell;
            cell.n = n;
            cell.exponent = exponent;
            cell.kind = params.kind;
            std::vector<double> z(static_cast<std::size_t>(params.replicates));

            if (params.design == StudyDesign::her) {
                ProbMatrix sparse =
                    params.kind == SparseKind::vanish
                        ? sparsify_vanish(her_ref, exponent, n)
                        : sparsify_thin(her_ref, exponent, n,
                                        RngSpec{params.seed, stream_id(kPurposeThin, cell_id, 0)});
                Moments m = w_moments_null(sparse);
                double sd = m.sd();
                if (!(sd > 0.0))
                    fail(errc::degenerate, "null distribution has zero spread");
                std::uint64_t id = cell_id;
                parallel_for(params.replicates, params.threads, [&, id](std::int64_t r) {
                    Graph g = sample_her(sparse, RngSpec{params.seed,
                                                         stream_id(kPurposeQqSample, id,
                                                                   static_cast<std::uint64_t>(r))});
                    z[static_cast<std::size_t>(r)] = (w_statistic(g, sparse) - m.mean) / sd;
                });
            } else {
                Graphon sparse = sparsify_vanish(eg_ref, exponent, n);
                Moments m = null_moments(sparse, n);
                double phi1_0 = phi_vector_cached(sparse).phi(1);
                double sd = m.sd();
                if (!(sd > 0.0))
                    fail(errc::degenerate, "null distribution has zero spread");
                std::uint64_t id = cell_id;
                parallel_for(params.replicates, params.threads, [&, id](std::int64_t r) {
                    EgSample s = sample_eg(sparse, n,
                                           RngSpec{params.seed,
                                                   stream_id(kPurposeQqSample, id,
                                                             static_cast<std::uint64_t>(r))});
                    z[static_cast<std::size_t>(r)] = (w_phi_statistic(s.graph, phi1_0) - m.mean) / sd;
                });
            }

            std::sort(z.begin(), z.end());
            cell.normal_q.resize(z.size());
            for (std::size_t k = 0; k < z.size(); ++k)
                cell.normal_q[k] = std_normal_quantile((static_cast<double>(k) + 0.5) /
                                                       static_cast<double>(z.size()));
            cell.ks_distance = ks_distance_normal(z);
            cell.sorted_z = std::move(z);
            cells.push_back(std::move(cell));
            ++cell_id;
        }
    }
    return cells;
}

std::vector<SizeEquivalenceCell> run_size_equivalence(const SizeEquivalenceParams& params) {
    check_common(params.replicates, params.alpha);
    if (params.n_grid.empty())
        fail(errc::invalid_argument, "empty parameter grid");
    if (!(params.p > 0.0 && params.p < 1.0))
        fail(errc::range, "edge probability must lie strictly between 0 and 1");

    std::vector<SizeEquivalenceCell> cells;
    std::uint64_t cell_id = 0;
    for (int n : params.n_grid) {
        SizeEquivalenceCell cell;
        cell.n = n;
        cell.p = params.p;
        cell.replicates = params.replicates;

        ProbMatrix p0 = ProbMatrix::constant(n, params.p);
        Moments w_null = w_moments_null(p0);
        double w_sd = w_null.sd();
        std::vector<double> gap(static_cast<std::size_t>(params.replicates));
        std::vector<char> rej_v(gap.size()), rej_w(gap.size());
        double t_alpha = std_normal_quantile(1.0 - params.alpha);
        std::uint64_t id = cell_id;
        parallel_for(params.replicates, params.threads, [&, id](std::int64_t r) {
            Graph g = sample_her(p0, RngSpec{params.seed,
                                             stream_id(kPurposeSizeSample, id,
                                                       static_cast<std::uint64_t>(r))});
            TestResult v = test_dv_er(g, params.alpha);
            double z_w = (w_statistic(g, p0) - w_null.mean) / w_sd;
            gap[static_cast<std::size_t>(r)] = std::abs(v.z - z_w);
            rej_v[static_cast<std::size_t>(r)] = v.reject;
            rej_w[static_cast<std::size_t>(r)] = z_w > t_alpha;
        });

        KahanSum s;
        long hv = 0, hw = 0;
        for (std::size_t r = 0; r < gap.size(); ++r) {
            s.add(gap[r]);
            hv += rej_v[r];
            hw += rej_w[r];
        }
        cell.mean_abs_z_gap = s.value() / static_cast<double>(params.replicates);
        cell.size_v = static_cast<double>(hv) / static_cast<double>(params.replicates);
        cell.size_w = static_cast<double>(hw) / static_cast<double>(params.replicates);
        cells.push_back(std::move(cell));
        ++cell_id;
    }
    return cells;
}

std::string render_power_csv(const std::vector<PowerCell>& cells) {
    std::ostringstream out;
    out << "n,rho_star,beta,power_analytic,power_empirical,ci_halfwidth,replicates\n";
    for (const auto& c : cells)
        out << c.n << ',' << fmt_g10(c.rho_star) << ',' << fmt_g10(c.beta) << ','
            << fmt_g10(c.power_analytic) << ',' << fmt_g10(c.power_empirical) << ','
            << fmt_g10(c.ci_halfwidth) << ',' << c.replicates << '\n';
    return out.str();
}

std::string render_qq_csv(const std::vector<QqCell>& cells) {
    std::ostringstream out;
    out << "n,exponent,kind,rank,empirical_q,normal_q,ks_distance\n";
    for (const auto& c : cells) {
        const char* kind = c.kind == SparseKind::vanish ? "vanish" : "thin";
        for (std::size_t k = 0; k < c.sorted_z.size(); ++k)
            out << c.n << ',' << fmt_g10(c.exponent) << ',' << kind << ',' << (k + 1) << ','
                << fmt_g10(c.sorted_z[k]) << ',' << fmt_g10(c.normal_q[k]) << ','
                << fmt_g10(c.ks_distance) << '\n';
    }
    return out.str();
}

std::string render_size_csv(const std::vector<SizeEquivalenceCell>& cells) {
    std::ostringstream out;
    out << "n,p,replicates,mean_abs_z_gap,size_v,size_w\n";
    for (const auto& c : cells)
        out << c.n << ',' << fmt_g10(c.p) << ',' << c.replicates << ','
            << fmt_g10(c.mean_abs_z_gap) << ',' << fmt_g10(c.size_v) << ','
            << fmt_g10(c.size_w) << '\n';
    return out.str();
}

} // namespace netgof
