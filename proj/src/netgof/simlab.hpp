#pragma once

#include <string>
#include <vector>

#include "netgof/graphon.hpp"
#include "netgof/logistic.hpp"
#include "netgof/prob_matrix.hpp"
#include "netgof/rng.hpp"

namespace netgof {

// Covariate-driven independent-edge design: three node covariates feed a
// logistic link, the null model drops the last covariate, and both intercepts
// are calibrated so the mean connection probability hits rho_star.
struct HerDesignParams {
    int n = 0;
    double rho_star = 0.0;
    double beta = 0.0; // coefficient of the dropped covariate
};

struct HerDesign {
    HerDesignParams params;
    CovariateTable covariates; // three columns, one row per pair
    double intercept_alt = 0.0;
    double intercept_null = 0.0;
    ProbMatrix p;  // full model
    ProbMatrix p0; // last covariate removed
};

HerDesign build_her_design(const HerDesignParams& params, RngSpec rng);

// Exchangeable design: a two-block product-form null kernel contaminated by
// a degree-imbalance factor rho * beta^2 (uv)^(beta-1), both scaled to the
// target density.
struct EgDesignParams {
    int n = 0;
    double rho_star = 0.0;
    double beta = 1.0; // in [1,2]; 1 recovers the null
};

struct EgDesign {
    EgDesignParams params;
    double rho = 0.0;
    Graphon phi;  // true model
    Graphon phi0; // density-matched null
};

EgDesign build_eg_design(const EgDesignParams& params);

enum class StudyDesign { her, eg };
enum class SparseKind { vanish, thin };

struct PowerStudyParams {
    StudyDesign design = StudyDesign::her;
    std::vector<int> n_grid;
    std::vector<double> rho_grid;
    std::vector<double> beta_grid;
    long replicates = 500;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    int threads = 0; // 0 = all available
};

struct PowerCell {
    int n = 0;
    double rho_star = 0.0;
    double beta = 0.0;
    double power_analytic = 0.0;
    double power_empirical = 0.0;
    double ci_halfwidth = 0.0;
    long replicates = 0;
};

std::vector<PowerCell> run_power_study(const PowerStudyParams& params);

struct QqStudyParams {
    StudyDesign design = StudyDesign::her;
    SparseKind kind = SparseKind::vanish;
    std::vector<int> n_grid;
    std::vector<double> exponent_grid;
    double rho_star = 0.1;
    long replicates = 500;
    std::uint64_t seed = 0;
    int threads = 0;
};

struct QqCell {
    int n = 0;
    double exponent = 0.0;
    SparseKind kind = SparseKind::vanish;
    std::vector<double> sorted_z; // empirical quantiles, ascending
    std::vector<double> normal_q;
    double ks_distance = 0.0;
};

std::vector<QqCell> run_qq_study(const QqStudyParams& params);

struct SizeEquivalenceParams {
    std::vector<int> n_grid;
    double p = 0.5;
    long replicates = 500;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    int threads = 0;
};

struct SizeEquivalenceCell {
    int n = 0;
    double p = 0.0;
    long replicates = 0;
    double mean_abs_z_gap = 0.0; // |z of plug-in variance test - z of known-p test|
    double size_v = 0.0;
    double size_w = 0.0;
};

std::vector<SizeEquivalenceCell> run_size_equivalence(const SizeEquivalenceParams& params);

std::string render_power_csv(const std::vector<PowerCell>& cells);
std::string render_qq_csv(const std::vector<QqCell>& cells);
std::string render_size_csv(const std::vector<SizeEquivalenceCell>& cells);

// One-sample Kolmogorov-Smirnov distance to the standard normal.
double ks_distance_normal(std::vector<double> values);

} // namespace netgof
