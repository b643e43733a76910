#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "netgof/common.hpp"
#include "netgof/gof_tests.hpp"
#include "netgof/logistic.hpp"
#include "netgof/normal.hpp"
#include "netgof/sampling.hpp"
#include "oracles.hpp"

using namespace netgof;
using namespace netgof::testoracle;

namespace {

CovariateTable full_table(int n, const std::vector<std::string>& names,
                          const std::function<std::vector<double>(int, int)>& x) {
    CovariateTable t;
    t.d = static_cast<int>(names.size());
    t.names = names;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            t.rows.push_back({i, j, x(i, j)});
    return t;
}

} // namespace

TEST_SUITE("gof-tests") {

TEST_CASE("result assembly") {
    Moments m{2.0, 0.25};
    TestResult r = make_test_result(3.0, m, 0.05);
    CHECK(r.statistic == 3.0);
    CHECK(r.null_mean == 2.0);
    CHECK(r.null_sd == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.z == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.p_value == doctest::Approx(static_cast<double>(normal_sf_ref(2.0L))).epsilon(1e-13));
    CHECK(r.alpha == 0.05);
    CHECK(r.reject);

    TestResult border = make_test_result(2.0 + 0.5 * std_normal_quantile(0.95) * 0.999, m, 0.05);
    CHECK_FALSE(border.reject);

    CHECK_THROWS_AS(make_test_result(1.0, Moments{1.0, 0.0}, 0.05), Error);
    CHECK_THROWS_AS(make_test_result(1.0, m, 0.0), Error);
    CHECK_THROWS_AS(make_test_result(1.0, m, 1.0), Error);
    CHECK_THROWS_AS(make_test_result(1.0, m, -0.2), Error);
}

TEST_CASE("fixed-matrix test on a hand example") {
    Graph triangle = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    ProbMatrix half = ProbMatrix::constant(3, 0.5);
    TestResult r = test_her(triangle, half, 0.05);
    CHECK(r.statistic == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.null_mean == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.null_sd == doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-13));
    CHECK(r.z == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(r.p_value ==
          doctest::Approx(static_cast<double>(normal_sf_ref(std::sqrt(3.0L)))).epsilon(1e-12));
    CHECK(r.reject);

    CHECK_THROWS_AS(test_her(triangle, ProbMatrix::constant(4, 0.5), 0.05), Error);
}

TEST_CASE("fixed-matrix test composes statistic and null moments") {
    ProbMatrix p0 = random_prob_matrix(12, 77);
    Graph g = random_graph(12, 0.5, 78);
    TestResult r = test_her(g, p0, 0.1);
    TestResult direct = make_test_result(w_statistic(g, p0), w_moments_null(p0), 0.1);
    CHECK(r.statistic == direct.statistic);
    CHECK(r.null_mean == direct.null_mean);
    CHECK(r.null_sd == direct.null_sd);
    CHECK(r.z == direct.z);
    CHECK(r.p_value == direct.p_value);
    CHECK(r.reject == direct.reject);
}

TEST_CASE("degree-variance test with plug-in density") {
    Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    TestResult r = test_dv_er(star, 0.05);
    CHECK(r.statistic == doctest::Approx(0.75).epsilon(1e-15));
    Moments m = v_moments_er(4, 0.5);
    CHECK(r.null_mean == doctest::Approx(m.mean).epsilon(1e-15));
    CHECK(r.null_sd == doctest::Approx(std::sqrt(m.variance)).epsilon(1e-15));
    CHECK(r.z == doctest::Approx((0.75 - m.mean) / std::sqrt(m.variance)).epsilon(1e-13));

    CHECK_THROWS_AS(test_dv_er(Graph::from_edges(4, {}), 0.05), Error); // density 0
    Graph k4 = random_graph(4, 1.0, 1);                 // complete
    CHECK(k4.edge_count() == 6);
    CHECK_THROWS_AS(test_dv_er(k4, 0.05), Error);                // density 1
    CHECK_THROWS_AS(test_dv_er(Graph::from_edges(2, {{0, 1}}), 0.05), Error);
}

TEST_CASE("exchangeable test composes its pieces") {
    Graphon block = Graphon::block({0.4, 0.6}, {{0.7, 0.2}, {0.2, 0.5}});
    Graph g = sample_eg(block, 30, RngSpec{911, 0}).graph;
    TestResult r = test_eg(g, block, 0.05);

    Moments null_m = null_moments(block, 30);
    PhiVector phi = phi_vector_cached(block);
    TestResult direct = make_test_result(w_phi_statistic(g, phi.phi(1)), null_m, 0.05);
    CHECK(r.statistic == direct.statistic);
    CHECK(r.null_mean == direct.null_mean);
    CHECK(r.null_sd == direct.null_sd);
    CHECK(r.p_value == direct.p_value);

    TestResult again = test_eg(g, block, 0.05);
    CHECK(r.z == again.z);
}

TEST_CASE("analytic power reduces to the level under the null") {
    ProbMatrix p0 = random_prob_matrix(15, 5);
    for (double alpha : {0.01, 0.05, 0.2}) {
        CHECK(power_her(p0, p0, alpha) == doctest::Approx(alpha).epsilon(1e-12));
        CHECK(power_dv(ProbMatrix::constant(15, 0.37), alpha) ==
              doctest::Approx(alpha).epsilon(1e-12));
    }
    Graphon block = Graphon::block({0.5, 0.5}, {{0.4, 0.3}, {0.3, 0.6}});
    CHECK(power_eg(block, block, 40, 0.05) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("analytic power formula recomputed by hand") {
    int n = 40;
    ProbMatrix p0 = ProbMatrix::constant(n, 0.3);
    ProbMatrix p(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            p.set(i, j, logistic(std::log(0.3 / 0.7) + 0.004 * (i + j)));
    double got = power_her(p0, p, 0.05);

    Moments m0 = w_moments_null(p0);
    Moments m1 = w_moments_her(p, p0);
    long double t = std_normal_quantile(0.95);
    long double shift = (m0.mean + t * std::sqrt(m0.variance) - m1.mean) / std::sqrt(m1.variance);
    CHECK(got == doctest::Approx(static_cast<double>(normal_sf_ref(shift))).epsilon(1e-12));
    CHECK(got > 0.05);
    CHECK(got < 1.0);

    // A larger departure from the null can only help.
    ProbMatrix p_far(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            p_far.set(i, j, logistic(std::log(0.3 / 0.7) + 0.008 * (i + j)));
    CHECK(power_her(p0, p_far, 0.05) > got);

    CHECK_THROWS_AS(power_her(p0, ProbMatrix::constant(5, 0.3), 0.05), Error);
    CHECK_THROWS_AS(power_her(p0, p, 0.0), Error);
}

} // TEST_SUITE("gof-tests")

TEST_SUITE("logistic") {

TEST_CASE("two covariate groups have a closed-form fit") {
    // One binary covariate splits the 15 pairs of a six-node graph into a
    // group of 8 (x=0) and a group of 7 (x=1); the saturated likelihood is
    // maximized at the within-group edge fractions.
    int n = 6;
    std::vector<std::pair<int, int>> all_pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            all_pairs.push_back({i, j});
    CovariateTable t;
    t.d = 1;
    t.names = {"grp"};
    for (std::size_t q = 0; q < all_pairs.size(); ++q)
        t.rows.push_back({all_pairs[q].first, all_pairs[q].second, {q < 8 ? 0.0 : 1.0}});

    // 4 of the 8 group-0 pairs and 3 of the 7 group-1 pairs get edges.
    std::vector<std::pair<int, int>> edges;
    for (std::size_t q : {0u, 2u, 5u, 7u, 8u, 10u, 13u})
        edges.push_back(all_pairs[q]);
    Graph g = Graph::from_edges(n, edges);
    CHECK(g.edge_count() == 7);

    LogisticNull fit = fit_logistic_null(g, t);
    CHECK(fit.converged);
    CHECK_FALSE(fit.ridged);
    CHECK(fit.score_norm < 1e-8);
    REQUIRE(fit.beta.size() == 2);
    CHECK(fit.beta[0] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(fit.beta[1] == doctest::Approx(std::log(3.0 / 4.0)).epsilon(1e-6));

    // Curvature at the optimum: 8*(1/4) on group 0, 7*(3/7)(4/7) on group 1.
    REQUIRE(fit.std_errors.size() == 2);
    CHECK(fit.std_errors[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
    CHECK(fit.std_errors[1] == doctest::Approx(std::sqrt(13.0 / 12.0)).epsilon(1e-6));

    for (std::size_t q = 0; q < all_pairs.size(); ++q) {
        double want = q < 8 ? 0.5 : 3.0 / 7.0;
        CHECK(fit.fitted(all_pairs[q].first, all_pairs[q].second) ==
              doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("recovers generating coefficients on a simulated graph") {
    int n = 60;
    std::vector<double> truth = {-1.0, 0.8};
    CovariateTable t = full_table(n, {"x"}, [&](int i, int j) {
        double v = std::sin(0.7 * i + 1.3 * j);
        return std::vector<double>{v};
    });
    ProbMatrix p(n);
    for (const auto& row : t.rows)
        p.set(row.i, row.j, logistic(truth[0] + truth[1] * row.x[0]));
    Graph g = sample_her(p, RngSpec{24601, 0});

    LogisticNull fit = fit_logistic_null(g, t);
    REQUIRE(fit.converged);
    for (std::size_t k = 0; k < 2; ++k)
        CHECK(std::abs(fit.beta[k] - truth[k]) < 3.0 * fit.std_errors[k]);
}

TEST_CASE("duplicate columns trigger the ridge fallback") {
    int n = 8;
    CovariateTable t = full_table(n, {"a", "b"}, [&](int i, int j) {
        double v = 0.1 * (i + 2 * j);
        return std::vector<double>{v, v};
    });
    Graph g = random_graph(n, 0.5, 99);
    LogisticNull fit = fit_logistic_null(g, t);
    CHECK(fit.ridged);
}

TEST_CASE("separated data walks to an extreme slope") {
    // Edges exactly where the covariate is 1: the likelihood has no interior
    // maximum, so the slope blows up until the fitted probabilities saturate
    // (or the iteration gives up first).
    int n = 6;
    CovariateTable t = full_table(n, {"x"}, [&](int i, int j) {
        return std::vector<double>{(i + j) % 2 == 0 ? 1.0 : 0.0};
    });
    std::vector<std::pair<int, int>> edges;
    for (const auto& row : t.rows)
        if (row.x[0] == 1.0)
            edges.push_back({row.i, row.j});
    Graph g = Graph::from_edges(n, edges);
    LogisticNull fit = fit_logistic_null(g, t);
    CHECK(fit.beta[1] > 20.0);
    if (fit.converged) {
        CHECK(fit.fitted(0, 1) < 1e-6);
        CHECK(fit.fitted(0, 2) > 1.0 - 1e-6);
    }
}

TEST_CASE("input validation") {
    Graph g = random_graph(5, 0.5, 3);
    CovariateTable ok = full_table(5, {"x"}, [](int i, int j) {
        return std::vector<double>{static_cast<double>(i + j)};
    });

    CovariateTable empty;
    empty.d = 0;
    CHECK_THROWS_AS(fit_logistic_null(g, empty), Error);

    CovariateTable missing = ok;
    missing.rows.pop_back();
    CHECK_THROWS_AS(fit_logistic_null(g, missing), Error);

    CovariateTable dup = ok;
    dup.rows[1] = dup.rows[0];
    CHECK_THROWS_AS(fit_logistic_null(g, dup), Error);

    CovariateTable wide = ok;
    wide.rows[2].x.push_back(1.0);
    CHECK_THROWS_AS(fit_logistic_null(g, wide), Error);

    CovariateTable out_of_range = ok;
    out_of_range.rows[0].j = 7;
    CHECK_THROWS_AS(fit_logistic_null(g, out_of_range), Error);
}

TEST_CASE("covariate CSV round trip and rejections") {
    CovariateTable t = full_table(4, {"dist", "band"}, [](int i, int j) {
        return std::vector<double>{0.25 * i + j, static_cast<double>((i * j) % 3)};
    });
    std::ostringstream out;
    write_covariates_csv(out, t);
    std::istringstream in(out.str());
    CovariateTable back = read_covariates_csv(in);
    CHECK(back.d == 2);
    CHECK(back.names == t.names);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        CHECK(back.rows[r].i == t.rows[r].i);
        CHECK(back.rows[r].j == t.rows[r].j);
        CHECK(back.rows[r].x == t.rows[r].x);
    }

    auto reject = [](const std::string& text, const std::string& needle) {
        std::istringstream s(text);
        CHECK_THROWS_WITH_AS(read_covariates_csv(s), doctest::Contains(needle.c_str()), Error);
    };
    reject("", "empty");
    reject("a,b,x\n", "must start with i,j");
    reject("i,j\n", "at least one covariate");
    reject("i,j,x\n0,1\n", "line 2");
    reject("i,j,x\n1,0,3.5\n", "i < j");
    reject("i,j,x\n0,1,oops\n", "line 2");
    reject("i,j,x\n-1,1,0.5\n", "nonnegative");
    reject("i,j,x\n0,1.5,0.5\n", "line 2");
}

} // TEST_SUITE("logistic")
