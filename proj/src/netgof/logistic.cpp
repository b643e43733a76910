#include "netgof/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "netgof/csv.hpp"

namespace netgof {

double logistic(double t) {
    if (t >= 0.0)
        return 1.0 / (1.0 + std::exp(-t));
    double e = std::exp(t);
    return e / (1.0 + e);
}

CovariateTable read_covariates_csv(std::istream& in) {
    CovariateTable table;
    std::string line;
    if (!std::getline(in, line))
        fail(errc::parse, "empty covariate file");
    auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "i" || header[1] != "j")
        fail(errc::parse, "covariate header must start with i,j and have at least one covariate");
    table.d = static_cast<int>(header.size()) - 2;
    table.names.assign(header.begin() + 2, header.end());

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            fail(errc::parse, "line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        CovariateTable::Row row;
        double iv = parse_double_field(fields[0], lineno);
        double jv = parse_double_field(fields[1], lineno);
        row.i = static_cast<int>(iv);
        row.j = static_cast<int>(jv);
        if (row.i != iv || row.j != jv || row.i < 0 || row.j < 0)
            fail(errc::parse, "line " + std::to_string(lineno) + ": node ids must be nonnegative integers");
        if (row.i >= row.j)
            fail(errc::parse, "line " + std::to_string(lineno) + ": pairs must satisfy i < j");
        row.x.reserve(static_cast<std::size_t>(table.d));
        for (std::size_t k = 2; k < fields.size(); ++k)
            row.x.push_back(parse_double_field(fields[k], lineno));
        table.rows.push_back(std::move(row));
    }
    return table;
}

CovariateTable read_covariates_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(errc::io, "cannot open " + path);
    return read_covariates_csv(in);
}

void write_covariates_csv(std::ostream& out, const CovariateTable& table) {
    out << "i,j";
    for (const auto& name : table.names)
        out << ',' << name;
    out << '\n';
    for (const auto& row : table.rows) {
        out << row.i << ',' << row.j;
        for (double v : row.x)
            out << ',' << fmt_g10(v);
        out << '\n';
    }
}

namespace {

// Cholesky solve of the symmetric positive definite system A b = rhs;
// returns false when a pivot is not positive.
bool cholesky_solve(std::vector<double> a, std::vector<double> rhs, std::size_t d,
                    std::vector<double>& out) {
    for (std::size_t k = 0; k < d; ++k) {
        double pivot = a[k * d + k];
        for (std::size_t t = 0; t < k; ++t)
            pivot -= a[k * d + t] * a[k * d + t];
        if (!(pivot > 0.0))
            return false;
        double lkk = std::sqrt(pivot);
        a[k * d + k] = lkk;
        for (std::size_t r = k + 1; r < d; ++r) {
            double v = a[r * d + k];
            for (std::size_t t = 0; t < k; ++t)
                v -= a[r * d + t] * a[k * d + t];
            a[r * d + k] = v / lkk;
        }
    }
    for (std::size_t r = 0; r < d; ++r) {
        double v = rhs[r];
        for (std::size_t t = 0; t < r; ++t)
            v -= a[r * d + t] * rhs[t];
        rhs[r] = v / a[r * d + r];
    }
    for (std::size_t ri = d; ri-- > 0;) {
        double v = rhs[ri];
        for (std::size_t t = ri + 1; t < d; ++t)
            v -= a[t * d + ri] * rhs[t];
        rhs[ri] = v / a[ri * d + ri];
    }
    out = std::move(rhs);
    return true;
}

bool invert_spd(const std::vector<double>& a, std::size_t d, std::vector<double>& inv) {
    inv.assign(d * d, 0.0);
    std::vector<double> e(d), col;
    for (std::size_t c = 0; c < d; ++c) {
        std::fill(e.begin(), e.end(), 0.0);
        e[c] = 1.0;
        if (!cholesky_solve(a, e, d, col))
            return false;
        for (std::size_t r = 0; r < d; ++r)
            inv[r * d + c] = col[r];
    }
    return true;
}

} // namespace

LogisticNull fit_logistic_null(const Graph& g, const CovariateTable& x) {
    int n = g.node_count();
    std::size_t pairs = pair_count(n);
    if (x.d < 1)
        fail(errc::invalid_argument, "need at least one covariate");
    if (x.rows.size() != pairs)
        fail(errc::dimension, "expected one covariate row per pair: " + std::to_string(pairs) +
                                  " needed, " + std::to_string(x.rows.size()) + " given");

    std::size_t d = static_cast<std::size_t>(x.d) + 1; // intercept column
    std::vector<double> design(pairs * d);
    std::vector<char> seen(pairs, 0);
    std::vector<double> y(pairs);
    for (const auto& row : x.rows) {
        if (row.j >= n)
            fail(errc::range, "covariate pair exceeds node count");
        if (row.x.size() != static_cast<std::size_t>(x.d))
            fail(errc::dimension, "covariate row width mismatch");
        std::size_t q = pair_index(n, row.i, row.j);
        if (seen[q])
            fail(errc::invalid_argument, "duplicate covariate row for a pair");
        seen[q] = 1;
        design[q * d] = 1.0;
        for (std::size_t k = 0; k + 1 < d; ++k)
            design[q * d + 1 + k] = row.x[k];
        y[q] = g.has_edge(row.i, row.j) ? 1.0 : 0.0;
    }

    LogisticNull out;
    out.beta.assign(d, 0.0);
    std::vector<double> p(pairs), score(d), curvature(d * d), step;
    const int max_iter = 50;
    for (int iter = 1; iter <= max_iter; ++iter) {
        out.iterations = iter;
        for (std::size_t q = 0; q < pairs; ++q) {
            double eta = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                eta += design[q * d + k] * out.beta[k];
            p[q] = logistic(eta);
        }
        std::vector<KahanSum> score_acc(d);
        std::vector<KahanSum> curv_acc(d * d);
        for (std::size_t q = 0; q < pairs; ++q) {
            double r = y[q] - p[q];
            double w = p[q] * (1.0 - p[q]);
            for (std::size_t a = 0; a < d; ++a) {
                double xa = design[q * d + a];
                score_acc[a].add(xa * r);
                for (std::size_t b = a; b < d; ++b)
                    curv_acc[a * d + b].add(w * xa * design[q * d + b]);
            }
        }
        double norm = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
            score[a] = score_acc[a].value();
            norm = std::max(norm, std::abs(score[a]));
            for (std::size_t b = a; b < d; ++b) {
                curvature[a * d + b] = curv_acc[a * d + b].value();
                curvature[b * d + a] = curvature[a * d + b];
            }
        }
        out.score_norm = norm;
        if (norm < 1e-8) {
            out.converged = true;
            break;
        }
        if (!cholesky_solve(curvature, score, d, step)) {
            std::vector<double> ridged = curvature;
            for (std::size_t a = 0; a < d; ++a)
                ridged[a * d + a] += 1e-8;
            out.ridged = true;
            if (!cholesky_solve(ridged, score, d, step))
                fail(errc::degenerate, "design matrix is rank deficient");
            curvature = std::move(ridged);
        }
        double norm_beta = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            out.beta[k] += step[k];
            norm_beta += out.beta[k] * out.beta[k];
        }
        if (std::sqrt(norm_beta) > 1e3)
            break; // separation: coefficients diverge
    }

    std::vector<double> inv;
    if (invert_spd(curvature, d, inv)) {
        out.std_errors.resize(d);
        for (std::size_t k = 0; k < d; ++k)
            out.std_errors[k] = std::sqrt(std::max(0.0, inv[k * d + k]));
    } else {
        out.std_errors.assign(d, std::numeric_limits<double>::quiet_NaN());
    }

    out.fitted = ProbMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::size_t q = pair_index(n, i, j);
            double eta = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                eta += design[q * d + k] * out.beta[k];
            out.fitted.set(i, j, logistic(eta));
        }
    return out;
}

} // namespace netgof
