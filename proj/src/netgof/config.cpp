#include "netgof/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "netgof/csv.hpp"
#include "netgof/simlab.hpp"

namespace netgof {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        fail(errc::parse, "not a number: '" + s + "'");
    return v;
}

} // namespace

std::map<std::string, std::string> parse_config(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(errc::parse, "line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(errc::parse, "line " + std::to_string(lineno) + ": empty key");
        if (out.count(key))
            fail(errc::parse, "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        out[key] = value;
    }
    return out;
}

std::vector<double> parse_grid(const std::string& value) {
    std::string v = trim(value);
    if (v.empty())
        fail(errc::parse, "empty grid");

    auto spaced = [&](const std::string& name, bool log10_scale) -> std::vector<double> {
        std::string inner = v.substr(name.size() + 1, v.size() - name.size() - 2);
        auto parts = split_csv_line(inner);
        if (parts.size() != 3)
            fail(errc::parse, name + " needs (first, last, count)");
        double a = parse_number(trim(parts[0]));
        double b = parse_number(trim(parts[1]));
        double count = parse_number(trim(parts[2]));
        long k = static_cast<long>(count);
        if (k != count || k < 1)
            fail(errc::parse, name + " count must be a positive integer");
        std::vector<double> grid(static_cast<std::size_t>(k));
        for (long t = 0; t < k; ++t) {
            double x = k == 1 ? a : a + (b - a) * static_cast<double>(t) / static_cast<double>(k - 1);
            grid[static_cast<std::size_t>(t)] = log10_scale ? std::pow(10.0, x) : x;
        }
        return grid;
    };
    if (v.rfind("linspace(", 0) == 0 && v.back() == ')')
        return spaced("linspace", false);
    if (v.rfind("logspace(", 0) == 0 && v.back() == ')')
        return spaced("logspace", true);

    std::vector<double> grid;
    for (const auto& part : split_csv_line(v))
        grid.push_back(parse_number(trim(part)));
    return grid;
}

std::vector<int> parse_int_grid(const std::string& value) {
    std::vector<int> out;
    for (double v : parse_grid(value)) {
        int i = static_cast<int>(v);
        if (i != v)
            fail(errc::parse, "expected an integer, got " + fmt_g10(v));
        out.push_back(i);
    }
    return out;
}

namespace {

class ConfigReader {
public:
    explicit ConfigReader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) {
        used_.push_back(key);
        return kv_.count(key) != 0;
    }
    std::string get(const std::string& key, const std::string& fallback) {
        used_.push_back(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }
    std::string require(const std::string& key) {
        used_.push_back(key);
        auto it = kv_.find(key);
        if (it == kv_.end())
            fail(errc::parse, "missing config key '" + key + "'");
        return it->second;
    }

    void reject_unknown() const {
        std::string extra;
        for (const auto& [key, value] : kv_) {
            (void)value;
            if (std::find(used_.begin(), used_.end(), key) == used_.end())
                extra += (extra.empty() ? "" : ", ") + key;
        }
        if (!extra.empty())
            fail(errc::parse, "unknown config keys: " + extra);
    }

private:
    std::map<std::string, std::string> kv_;
    std::vector<std::string> used_;
};

std::uint64_t parse_seed(const std::string& s) {
    if (s.empty())
        fail(errc::parse, "empty seed");
    char* end = nullptr;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (*end != '\0')
        fail(errc::parse, "seed must be a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

long parse_count(const std::string& s, const std::string& what) {
    double v = parse_number(s);
    long k = static_cast<long>(v);
    if (k != v || k < 1)
        fail(errc::parse, what + " must be a positive integer");
    return k;
}

std::string join_ints(const std::vector<int>& grid) {
    std::string out;
    for (int v : grid)
        out += (out.empty() ? "" : ",") + std::to_string(v);
    return out;
}

std::string join_doubles(const std::vector<double>& grid) {
    std::string out;
    for (double v : grid)
        out += (out.empty() ? "" : ",") + fmt_g10(v);
    return out;
}

} // namespace

StudyOutput run_study_from_config(const std::string& text, int threads) {
    ConfigReader cfg(parse_config(text));
    std::string study = cfg.get("study", "power");
    if (study != "power" && study != "qq" && study != "size")
        fail(errc::parse, "study must be power, qq or size");

    StudyOutput out;
    out.study = study;
    std::ostringstream echo;
    echo << "study = " << study << '\n';

    if (study == "power") {
        PowerStudyParams p;
        std::string design = cfg.get("design", "her");
        if (design != "her" && design != "eg")
            fail(errc::parse, "design must be her or eg");
        p.design = design == "her" ? StudyDesign::her : StudyDesign::eg;
        p.n_grid = parse_int_grid(cfg.require("n"));
        p.rho_grid = parse_grid(cfg.get("rho_star", "0.1"));
        p.beta_grid = parse_grid(cfg.require("beta"));
        p.replicates = parse_count(cfg.get("replicates", "500"), "replicates");
        p.alpha = parse_number(cfg.get("alpha", "0.05"));
        p.seed = parse_seed(cfg.get("seed", "0"));
        p.threads = threads;
        cfg.reject_unknown();

        echo << "design = " << design << '\n'
             << "n = " << join_ints(p.n_grid) << '\n'
             << "rho_star = " << join_doubles(p.rho_grid) << '\n'
             << "beta = " << join_doubles(p.beta_grid) << '\n'
             << "replicates = " << p.replicates << '\n'
             << "alpha = " << fmt_g10(p.alpha) << '\n'
             << "seed = " << p.seed << '\n';
        out.csv = render_power_csv(run_power_study(p));
    } else if (study == "qq") {
        QqStudyParams p;
        std::string design = cfg.get("design", "her");
        if (design != "her" && design != "eg")
            fail(errc::parse, "design must be her or eg");
        p.design = design == "her" ? StudyDesign::her : StudyDesign::eg;
        std::string kind = cfg.get("kind", "vanish");
        if (kind != "vanish" && kind != "thin")
            fail(errc::parse, "kind must be vanish or thin");
        p.kind = kind == "vanish" ? SparseKind::vanish : SparseKind::thin;
        p.n_grid = parse_int_grid(cfg.require("n"));
        p.exponent_grid = parse_grid(cfg.require("exponent"));
        p.rho_star = parse_number(cfg.get("rho_star", "0.1"));
        p.replicates = parse_count(cfg.get("replicates", "500"), "replicates");
        p.seed = parse_seed(cfg.get("seed", "0"));
        p.threads = threads;
        cfg.reject_unknown();

        echo << "design = " << design << '\n'
             << "kind = " << kind << '\n'
             << "n = " << join_ints(p.n_grid) << '\n'
             << "exponent = " << join_doubles(p.exponent_grid) << '\n'
             << "rho_star = " << fmt_g10(p.rho_star) << '\n'
             << "replicates = " << p.replicates << '\n'
             << "seed = " << p.seed << '\n';
        out.csv = render_qq_csv(run_qq_study(p));
    } else {
        SizeEquivalenceParams p;
        p.n_grid = parse_int_grid(cfg.require("n"));
        p.p = parse_number(cfg.get("p", "0.5"));
        p.replicates = parse_count(cfg.get("replicates", "500"), "replicates");
        p.alpha = parse_number(cfg.get("alpha", "0.05"));
        p.seed = parse_seed(cfg.get("seed", "0"));
        p.threads = threads;
        cfg.reject_unknown();

        echo << "n = " << join_ints(p.n_grid) << '\n'
             << "p = " << fmt_g10(p.p) << '\n'
             << "replicates = " << p.replicates << '\n'
             << "alpha = " << fmt_g10(p.alpha) << '\n'
             << "seed = " << p.seed << '\n';
        out.csv = render_size_csv(run_size_equivalence(p));
    }
    out.config_echo = echo.str();
    return out;
}

} // namespace netgof
