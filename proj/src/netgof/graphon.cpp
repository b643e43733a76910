#include "netgof/graphon.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "netgof/csv.hpp"
#include "netgof/quadrature.hpp"

namespace netgof {

using nlohmann::json;

struct Graphon::Node {
    Kind kind = Kind::constant;

    double value = 0.0; // constant

    std::vector<double> alpha; // block
    std::vector<std::vector<double>> pi;
    std::vector<double> alpha_cum;

    bool power = false; // product
    double scale = 0.0;
    double beta = 1.0;
    std::vector<double> g_values;

    int m = 0; // grid
    std::vector<double> values;

    double factor = 1.0; // scaled
    std::shared_ptr<const Node> base;

    std::shared_ptr<const Node> left; // pointwise
    std::shared_ptr<const Node> right;
};

const Graphon::Node& Graphon::ref() const {
    if (!node_)
        fail(errc::invalid_argument, "empty graphon");
    return *node_;
}

Graphon::Kind Graphon::kind() const { return ref().kind; }

Graphon Graphon::constant(double value) {
    if (!(value >= 0.0 && value <= 1.0))
        fail(errc::range, "constant kernel value outside [0,1]");
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->value = value;
    return Graphon(std::move(n));
}

Graphon Graphon::block(std::vector<double> alpha, std::vector<std::vector<double>> pi) {
    std::size_t k = alpha.size();
    if (k == 0)
        fail(errc::invalid_argument, "block kernel needs at least one group");
    double total = 0.0;
    for (double a : alpha) {
        if (!(a > 0.0))
            fail(errc::range, "group weights must be positive");
        total += a;
    }
    if (std::abs(total - 1.0) > 1e-9)
        fail(errc::range, "group weights must sum to 1");
    if (pi.size() != k)
        fail(errc::dimension, "pi must be K x K");
    for (std::size_t a = 0; a < k; ++a) {
        if (pi[a].size() != k)
            fail(errc::dimension, "pi must be K x K");
        for (std::size_t b = 0; b < k; ++b) {
            if (!(pi[a][b] >= 0.0 && pi[a][b] <= 1.0))
                fail(errc::range, "pi entries must lie in [0,1]");
            if (pi[a][b] != pi[b][a])
                fail(errc::invalid_argument, "pi must be symmetric");
        }
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::block;
    n->alpha = std::move(alpha);
    n->pi = std::move(pi);
    n->alpha_cum.resize(k);
    double c = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        c += n->alpha[a];
        n->alpha_cum[a] = c;
    }
    n->alpha_cum.back() = 1.0;
    return Graphon(std::move(n));
}

Graphon Graphon::product_power(double scale, double beta) {
    if (!(scale > 0.0))
        fail(errc::range, "product kernel scale must be positive");
    if (!(beta >= 1.0))
        fail(errc::range, "product kernel exponent must be >= 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::product;
    n->power = true;
    n->scale = scale;
    n->beta = beta;
    return Graphon(std::move(n));
}

Graphon Graphon::product_table(std::vector<double> g_values) {
    if (g_values.size() < 2)
        fail(errc::invalid_argument, "tabulated product kernel needs at least 2 points");
    for (double v : g_values)
        if (!(v >= 0.0))
            fail(errc::range, "tabulated g values must be nonnegative");
    auto n = std::make_shared<Node>();
    n->kind = Kind::product;
    n->power = false;
    n->g_values = std::move(g_values);
    return Graphon(std::move(n));
}

Graphon Graphon::grid(int m, std::vector<double> values_row_major) {
    if (m < 2)
        fail(errc::invalid_argument, "grid kernel needs m >= 2");
    if (values_row_major.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m))
        fail(errc::dimension, "grid kernel needs m*m values");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double v = values_row_major[static_cast<std::size_t>(i) * m + j];
            if (!(v >= 0.0 && v <= 1.0))
                fail(errc::range, "grid values must lie in [0,1]");
            if (v != values_row_major[static_cast<std::size_t>(j) * m + i])
                fail(errc::invalid_argument, "grid values must be symmetric");
        }
    auto n = std::make_shared<Node>();
    n->kind = Kind::grid;
    n->m = m;
    n->values = std::move(values_row_major);
    return Graphon(std::move(n));
}

Graphon Graphon::scaled(const Graphon& base, double factor) {
    if (!(factor > 0.0))
        fail(errc::range, "scale factor must be positive");
    auto n = std::make_shared<Node>();
    n->kind = Kind::scaled;
    n->factor = factor;
    n->base = base.node_;
    if (!n->base)
        fail(errc::invalid_argument, "empty graphon");
    return Graphon(std::move(n));
}

Graphon Graphon::pointwise_product(const Graphon& a, const Graphon& b) {
    if (!a.node_ || !b.node_)
        fail(errc::invalid_argument, "empty graphon");
    auto n = std::make_shared<Node>();
    n->kind = Kind::pointwise;
    n->left = a.node_;
    n->right = b.node_;
    return Graphon(std::move(n));
}

namespace {

int block_of(const std::vector<double>& cum, double u) {
    for (std::size_t a = 0; a < cum.size(); ++a)
        if (u <= cum[a] || a + 1 == cum.size())
            return static_cast<int>(a);
    return static_cast<int>(cum.size()) - 1;
}

double interp_linear(const std::vector<double>& v, double u) {
    double t = u * static_cast<double>(v.size() - 1);
    int i0 = std::min(static_cast<int>(t), static_cast<int>(v.size()) - 2);
    if (i0 < 0)
        i0 = 0;
    double w = t - i0;
    return v[static_cast<std::size_t>(i0)] * (1.0 - w) + v[static_cast<std::size_t>(i0) + 1] * w;
}

} // namespace

double Graphon::eval_node(const Node& n, double u, double v) {
    switch (n.kind) {
    case Kind::constant:
        return n.value;
    case Kind::block:
        return n.pi[static_cast<std::size_t>(block_of(n.alpha_cum, u))]
                   [static_cast<std::size_t>(block_of(n.alpha_cum, v))];
    case Kind::product:
        if (n.power)
            return n.scale * std::pow(u, n.beta - 1.0) * n.scale * std::pow(v, n.beta - 1.0);
        return interp_linear(n.g_values, u) * interp_linear(n.g_values, v);
    case Kind::grid: {
        double tu = u * (n.m - 1), tv = v * (n.m - 1);
        int iu = std::min(static_cast<int>(tu), n.m - 2);
        int iv = std::min(static_cast<int>(tv), n.m - 2);
        double fu = tu - iu, fv = tv - iv;
        auto at = [&](int a, int b) { return n.values[static_cast<std::size_t>(a) * n.m + b]; };
        return at(iu, iv) * (1 - fu) * (1 - fv) + at(iu + 1, iv) * fu * (1 - fv) +
               at(iu, iv + 1) * (1 - fu) * fv + at(iu + 1, iv + 1) * fu * fv;
    }
    case Kind::scaled:
        return n.factor * eval_node(*n.base, u, v);
    case Kind::pointwise:
        return eval_node(*n.left, u, v) * eval_node(*n.right, u, v);
    }
    fail(errc::numeric, "unreachable kernel kind");
}

double Graphon::operator()(double u, double v) const {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
        fail(errc::range, "kernel arguments must lie in [0,1]");
    return eval_node(ref(), u, v);
}

double Graphon::g_moment(int k) const {
    const Node& n = ref();
    if (n.kind != Kind::product)
        fail(errc::invalid_argument, "g moments exist only for product kernels");
    if (k < 0)
        fail(errc::invalid_argument, "negative moment order");
    if (k == 0)
        return 1.0;
    if (n.power) {
        // integral of (scale u^(beta-1))^k over [0,1]
        double e = static_cast<double>(k) * (n.beta - 1.0) + 1.0;
        return std::pow(n.scale, k) / e;
    }
    // Piecewise-linear g: each segment integrates to (b^(k+1)-a^(k+1)) / ((k+1)(b-a)).
    const auto& gv = n.g_values;
    double h = 1.0 / static_cast<double>(gv.size() - 1);
    KahanSum s;
    for (std::size_t i = 0; i + 1 < gv.size(); ++i) {
        double a = gv[i], b = gv[i + 1];
        if (a == b) {
            s.add(h * std::pow(a, k));
        } else {
            s.add(h * (std::pow(b, k + 1) - std::pow(a, k + 1)) / ((k + 1) * (b - a)));
        }
    }
    return s.value();
}

double Graphon::edge_density() const {
    const Node& n = ref();
    switch (n.kind) {
    case Kind::constant:
        return n.value;
    case Kind::block: {
        KahanSum s;
        for (std::size_t a = 0; a < n.alpha.size(); ++a)
            for (std::size_t b = 0; b < n.alpha.size(); ++b)
                s.add(n.alpha[a] * n.alpha[b] * n.pi[a][b]);
        return s.value();
    }
    case Kind::product: {
        double g1 = g_moment(1);
        return g1 * g1;
    }
    case Kind::grid: {
        // Trapezoid weights integrate the bilinear interpolant exactly.
        std::vector<double> w(static_cast<std::size_t>(n.m));
        for (int i = 0; i < n.m; ++i)
            w[static_cast<std::size_t>(i)] = (i == 0 || i == n.m - 1 ? 0.5 : 1.0) / (n.m - 1);
        KahanSum s;
        for (int i = 0; i < n.m; ++i)
            for (int j = 0; j < n.m; ++j)
                s.add(w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] *
                      n.values[static_cast<std::size_t>(i) * n.m + j]);
        return s.value();
    }
    case Kind::scaled:
        return n.factor * Graphon(n.base).edge_density();
    case Kind::pointwise: {
        const auto& rule = gauss_legendre(128);
        KahanSum s;
        for (std::size_t a = 0; a < rule.nodes.size(); ++a)
            for (std::size_t b = 0; b < rule.nodes.size(); ++b)
                s.add(rule.weights[a] * rule.weights[b] * (*this)(rule.nodes[a], rule.nodes[b]));
        return s.value();
    }
    }
    fail(errc::numeric, "unreachable kernel kind");
}

double Graphon::sup_bound() const {
    const Node& n = ref();
    switch (n.kind) {
    case Kind::constant:
        return n.value;
    case Kind::block: {
        double m = 0.0;
        for (const auto& row : n.pi)
            for (double v : row)
                m = std::max(m, v);
        return m;
    }
    case Kind::product: {
        double gmax = n.power ? n.scale : *std::max_element(n.g_values.begin(), n.g_values.end());
        return gmax * gmax;
    }
    case Kind::grid:
        return *std::max_element(n.values.begin(), n.values.end());
    case Kind::scaled:
        return n.factor * Graphon(n.base).sup_bound();
    case Kind::pointwise:
        return Graphon(n.left).sup_bound() * Graphon(n.right).sup_bound();
    }
    fail(errc::numeric, "unreachable kernel kind");
}

void Graphon::require_unit_range() const {
    double s = sup_bound();
    if (s > 1.0 + 1e-9)
        fail(errc::range, "kernel exceeds 1 (sup bound " + fmt_g10(s) + "); not a valid edge-probability model");
}

double Graphon::constant_value() const {
    const Node& n = ref();
    if (n.kind != Kind::constant)
        fail(errc::invalid_argument, "not a constant kernel");
    return n.value;
}

const std::vector<double>& Graphon::alpha() const {
    const Node& n = ref();
    if (n.kind != Kind::block)
        fail(errc::invalid_argument, "not a block kernel");
    return n.alpha;
}

const std::vector<std::vector<double>>& Graphon::pi() const {
    const Node& n = ref();
    if (n.kind != Kind::block)
        fail(errc::invalid_argument, "not a block kernel");
    return n.pi;
}

bool Graphon::product_is_power() const {
    const Node& n = ref();
    if (n.kind != Kind::product)
        fail(errc::invalid_argument, "not a product kernel");
    return n.power;
}

double Graphon::product_scale() const {
    const Node& n = ref();
    if (n.kind != Kind::product || !n.power)
        fail(errc::invalid_argument, "not a power product kernel");
    return n.scale;
}

double Graphon::product_beta() const {
    const Node& n = ref();
    if (n.kind != Kind::product || !n.power)
        fail(errc::invalid_argument, "not a power product kernel");
    return n.beta;
}

const std::vector<double>& Graphon::product_values() const {
    const Node& n = ref();
    if (n.kind != Kind::product || n.power)
        fail(errc::invalid_argument, "not a tabulated product kernel");
    return n.g_values;
}

int Graphon::grid_size() const {
    const Node& n = ref();
    if (n.kind != Kind::grid)
        fail(errc::invalid_argument, "not a grid kernel");
    return n.m;
}

const std::vector<double>& Graphon::grid_values() const {
    const Node& n = ref();
    if (n.kind != Kind::grid)
        fail(errc::invalid_argument, "not a grid kernel");
    return n.values;
}

Graphon Graphon::base() const {
    const Node& n = ref();
    if (n.kind != Kind::scaled)
        fail(errc::invalid_argument, "not a scaled kernel");
    return Graphon(n.base);
}

double Graphon::factor() const {
    const Node& n = ref();
    if (n.kind != Kind::scaled)
        fail(errc::invalid_argument, "not a scaled kernel");
    return n.factor;
}

std::vector<Graphon> Graphon::factors() const {
    const Node& n = ref();
    if (n.kind != Kind::pointwise)
        fail(errc::invalid_argument, "not a pointwise product kernel");
    return {Graphon(n.left), Graphon(n.right)};
}

namespace {

json node_to_json(const Graphon& g);

json node_to_json(const Graphon& g) {
    json j;
    switch (g.kind()) {
    case Graphon::Kind::constant:
        j["type"] = "constant";
        j["value"] = g.constant_value();
        break;
    case Graphon::Kind::block:
        j["type"] = "sbm";
        j["alpha"] = g.alpha();
        j["pi"] = g.pi();
        break;
    case Graphon::Kind::product:
        j["type"] = "product";
        if (g.product_is_power()) {
            j["scale"] = g.product_scale();
            j["beta"] = g.product_beta();
        } else {
            j["g"] = g.product_values();
        }
        break;
    case Graphon::Kind::grid:
        j["type"] = "grid";
        j["m"] = g.grid_size();
        j["values"] = g.grid_values();
        break;
    case Graphon::Kind::scaled:
        j["type"] = "scaled";
        j["factor"] = g.factor();
        j["base"] = node_to_json(g.base());
        break;
    case Graphon::Kind::pointwise: {
        j["type"] = "product_of";
        json f = json::array();
        for (const auto& part : g.factors())
            f.push_back(node_to_json(part));
        j["factors"] = f;
        break;
    }
    }
    return j;
}

Graphon node_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        fail(errc::parse, "kernel JSON needs a 'type' tag");
    const std::string type = j["type"].get<std::string>();
    try {
        if (type == "constant")
            return Graphon::constant(j.at("value").get<double>());
        if (type == "sbm")
            return Graphon::block(j.at("alpha").get<std::vector<double>>(),
                                  j.at("pi").get<std::vector<std::vector<double>>>());
        if (type == "product") {
            if (j.contains("g"))
                return Graphon::product_table(j.at("g").get<std::vector<double>>());
            return Graphon::product_power(j.at("scale").get<double>(), j.at("beta").get<double>());
        }
        if (type == "grid")
            return Graphon::grid(j.at("m").get<int>(), j.at("values").get<std::vector<double>>());
        if (type == "scaled")
            return Graphon::scaled(node_from_json(j.at("base")), j.at("factor").get<double>());
        if (type == "product_of") {
            const auto& f = j.at("factors");
            if (!f.is_array() || f.size() < 2)
                fail(errc::parse, "product_of needs at least two factors");
            Graphon acc = node_from_json(f[0]);
            for (std::size_t i = 1; i < f.size(); ++i)
                acc = Graphon::pointwise_product(acc, node_from_json(f[i]));
            return acc;
        }
    } catch (const json::exception& e) {
        fail(errc::parse, std::string("kernel JSON: ") + e.what());
    }
    fail(errc::parse, "unknown kernel type '" + type + "'");
}

} // namespace

std::string Graphon::to_json() const { return node_to_json(*this).dump(); }

Graphon Graphon::from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(errc::parse, "kernel JSON is not valid JSON");
    Graphon g = node_from_json(j);
    g.require_unit_range();
    return g;
}

std::string Graphon::fingerprint() const { return to_json(); }

} // namespace netgof
