#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "netgof/common.hpp"
#include "netgof/normal.hpp"
#include "netgof/rng.hpp"
#include "oracles.hpp"

using namespace netgof;

TEST_SUITE("rng") {

TEST_CASE("words are a pure function of seed, stream and counter") {
    RngSpec spec{42, 7};
    CHECK(rng::word(spec, 0) == rng::word(spec, 0));
    CHECK(rng::word(spec, 123456789) == rng::word(spec, 123456789));
    CHECK(rng::word(spec, 0) != rng::word(spec, 1));
    CHECK(rng::word(spec, 0) != rng::word(spec.with_stream(8), 0));
    CHECK(rng::word(spec, 0) != rng::word(RngSpec{43, 7}, 0));
    CHECK(spec.with_stream(8).seed == spec.seed);
}

TEST_CASE("u01 stays inside the open unit interval") {
    RngSpec spec{2026, 3};
    double lo = 1.0, hi = 0.0;
    long double sum = 0.0L;
    const int reps = 1000000;
    for (int c = 0; c < reps; ++c) {
        double u = rng::u01(spec, static_cast<std::uint64_t>(c));
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    double se = 1.0 / std::sqrt(12.0 * reps);
    CHECK(std::abs(static_cast<double>(sum) / reps - 0.5) < 4.5 * se);
}

TEST_CASE("normal draws have the right first two moments") {
    RngSpec spec{11, 0};
    const int reps = 200000;
    long double sum = 0.0L, sq = 0.0L;
    for (int c = 0; c < reps; ++c) {
        double x = rng::normal(spec, static_cast<std::uint64_t>(c));
        sum += x;
        sq += x * x;
    }
    double mean = static_cast<double>(sum) / reps;
    double var = static_cast<double>(sq) / reps - mean * mean;
    CHECK(std::abs(mean) < 4.5 / std::sqrt(static_cast<double>(reps)));
    CHECK(std::abs(var - 1.0) < 4.5 * std::sqrt(2.0 / reps));
}

TEST_CASE("counter rng walks the stream in order") {
    RngSpec spec{5, 9};
    CounterRng seq(spec);
    CHECK(seq.word() == rng::word(spec, 0));
    CHECK(seq.u01() == rng::u01(spec, 1));
    CHECK(seq.normal() == rng::normal(spec, 2));
}

TEST_CASE("stream ids pack purpose, cell and replicate") {
    CHECK(stream_id(0, 0, 0) == 0);
    CHECK(stream_id(3, 5, 7) == ((3ull << 56) | (5ull << 32) | 7ull));
    CHECK(stream_id(1, (1ull << 24) + 2, 0) == ((1ull << 56) | (2ull << 32)));
    CHECK(stream_id(1, 0, (1ull << 32) + 9) == ((1ull << 56) | 9ull));
}

TEST_CASE("pair indexing is the upper triangle in row-major order") {
    for (int n : {2, 3, 7, 20}) {
        std::size_t q = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                CHECK(pair_index(n, i, j) == q++);
        CHECK(pair_count(n) == q);
    }
}

TEST_CASE("compensated sums survive cancellation") {
    KahanSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 2.0);
}

} // TEST_SUITE("rng")

TEST_SUITE("normal") {

TEST_CASE("cdf and sf match the reference") {
    for (double z = -8.0; z <= 8.0; z += 0.25) {
        double cdf = std_normal_cdf(z);
        double sf = std_normal_sf(z);
        auto cdf_ref = static_cast<double>(testoracle::normal_cdf_ref(z));
        auto sf_ref = static_cast<double>(testoracle::normal_sf_ref(z));
        CHECK(cdf == doctest::Approx(cdf_ref).epsilon(1e-13));
        CHECK(sf == doctest::Approx(sf_ref).epsilon(1e-13));
        CHECK(cdf + sf == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(std_normal_sf(10.0) == doctest::Approx(7.619853024160527e-24).epsilon(1e-12));
}

TEST_CASE("pdf is the gaussian density") {
    CHECK(std_normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
    CHECK(std_normal_pdf(2.0) == doctest::Approx(std::exp(-2.0) * 0.3989422804014327).epsilon(1e-14));
}

TEST_CASE("quantile inverts the cdf") {
    std::vector<double> ps = {1e-10, 1e-6, 1e-3, 0.01,   0.025, 0.2,  0.5,
                              0.8,   0.95, 0.975, 0.999, 1 - 1e-6, 1 - 1e-12};
    for (double p : ps) {
        double x = std_normal_quantile(p);
        CHECK(std::abs(std_normal_cdf(x) - p) <= 1e-12 * p + 1e-18);
    }
    CHECK(std_normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std_normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(std_normal_quantile(0.95) == doctest::Approx(1.644853626951473).epsilon(1e-12));
    CHECK(std_normal_quantile(0.2) == doctest::Approx(-std_normal_quantile(0.8)).epsilon(1e-13));
    CHECK_THROWS_AS(std_normal_quantile(0.0), Error);
    CHECK_THROWS_AS(std_normal_quantile(1.0), Error);
    CHECK_THROWS_AS(std_normal_quantile(-0.5), Error);
}

} // TEST_SUITE("normal")
