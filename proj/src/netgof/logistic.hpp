#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "netgof/graph.hpp"
#include "netgof/prob_matrix.hpp"

namespace netgof {

// Per-pair covariates: one row for each unordered pair i<j.
struct CovariateTable {
    int d = 0;
    std::vector<std::string> names; // covariate column names (without i, j)
    struct Row {
        int i = 0;
        int j = 0;
        std::vector<double> x;
    };
    std::vector<Row> rows;
};

// CSV with header "i,j,<name1>,...,<named>".
CovariateTable read_covariates_csv(std::istream& in);
CovariateTable read_covariates_csv_file(const std::string& path);
void write_covariates_csv(std::ostream& out, const CovariateTable& table);

struct LogisticNull {
    std::vector<double> beta;       // intercept first, then one slope per covariate
    std::vector<double> std_errors; // asymptotic, from the inverse curvature
    ProbMatrix fitted;
    int iterations = 0;
    double score_norm = 0.0; // max absolute score component at the last iterate
    bool converged = false;
    bool ridged = false; // near-singular normal equations were regularized
};

// Maximum likelihood over the pair indicators with design [1, x_ij] by
// iteratively reweighted least squares. Divergent iterates (separation) stop
// early and are reported through `converged`.
LogisticNull fit_logistic_null(const Graph& g, const CovariateTable& x);

double logistic(double t);

} // namespace netgof
