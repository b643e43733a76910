#pragma once

#include <vector>

namespace netgof {

// Gauss-Legendre rule mapped to [0,1]. Rules are cached per node count.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(int m);

} // namespace netgof
