#include "netgof/normal.hpp"

#include <algorithm>
#include <cmath>

#include "netgof/common.hpp"

namespace netgof {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
} // namespace

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double std_normal_sf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        fail(errc::range, "normal quantile requires p in (0,1)");

    // Crude tail-based starting point, then Newton iterations kept inside a
    // shrinking bracket so the result is correct even where the density is tiny.
    double q = std::min(p, 1.0 - p);
    double t = std::sqrt(-2.0 * std::log(q));
    double x = t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t));
    if (p < 0.5)
        x = -x;

    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 100; ++it) {
        double f = std_normal_cdf(x) - p;
        if (f >= 0.0)
            hi = std::min(hi, x);
        else
            lo = std::max(lo, x);
        double d = std_normal_pdf(x);
        double next = (d > 1e-300) ? x - f / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * (1.0 + std::abs(next))) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

} // namespace netgof
