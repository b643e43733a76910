#pragma once

namespace netgof {

double std_normal_pdf(double x);
double std_normal_cdf(double x);
// Upper tail P(Z > x), accurate far into the tail.
double std_normal_sf(double x);
// Inverse of std_normal_cdf for p in (0,1).
double std_normal_quantile(double p);

} // namespace netgof
