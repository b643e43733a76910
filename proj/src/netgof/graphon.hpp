#pragma once

#include <memory>
#include <string>
#include <vector>

#include "netgof/common.hpp"

namespace netgof {

// Symmetric kernel on [0,1]^2 used as an exchangeable graph model. Held as an
// immutable expression tree so that block models, degree-product models and
// their scaled or multiplied combinations keep their structure, which the
// moment code exploits for closed forms.
class Graphon {
public:
    enum class Kind {
        constant,  // fixed value
        block,     // stochastic block model: group weights alpha, matrix pi
        product,   // degree-product kernel g(u) g(v)
        grid,      // bilinear interpolation of node values on a uniform grid
        scaled,    // base kernel times a factor
        pointwise, // pointwise product of factor kernels
    };

    Graphon() = default;

    static Graphon constant(double value);
    static Graphon block(std::vector<double> alpha, std::vector<std::vector<double>> pi);
    // g(u) = scale * u^(beta-1) with beta >= 1.
    static Graphon product_power(double scale, double beta);
    // g tabulated at equally spaced points on [0,1], linear in between.
    static Graphon product_table(std::vector<double> g_values);
    static Graphon grid(int m, std::vector<double> values_row_major);
    static Graphon scaled(const Graphon& base, double factor);
    static Graphon pointwise_product(const Graphon& a, const Graphon& b);

    bool empty() const { return node_ == nullptr; }
    Kind kind() const;

    double operator()(double u, double v) const;

    // Exact where the structure allows it; quadrature for grid and pointwise
    // kinds (pointwise factors may be discontinuous, so treat that case as an
    // approximation).
    double edge_density() const;

    // Upper bound on sup |kernel|; exact except for the pointwise kind, where
    // it is the product of the factor bounds.
    double sup_bound() const;
    // Enforces sup <= 1 before the kernel is used as an edge-probability model.
    void require_unit_range() const;

    // Accessors for structure-aware consumers.
    double constant_value() const;
    const std::vector<double>& alpha() const;
    const std::vector<std::vector<double>>& pi() const;
    bool product_is_power() const;
    double product_scale() const;
    double product_beta() const;
    const std::vector<double>& product_values() const;
    double g_moment(int k) const; // integral of g^k for the product kind
    int grid_size() const;
    const std::vector<double>& grid_values() const;
    Graphon base() const;  // scaled
    double factor() const; // scaled
    std::vector<Graphon> factors() const; // pointwise

    std::string to_json() const;
    static Graphon from_json(const std::string& text);
    // Canonical serialization, used as a cache key.
    std::string fingerprint() const;

private:
    struct Node;
    explicit Graphon(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    const Node& ref() const;
    static double eval_node(const Node& n, double u, double v);

    std::shared_ptr<const Node> node_;
};

} // namespace netgof
