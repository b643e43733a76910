#include "netgof/edge_list.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace netgof {

namespace {

long long parse_node(const std::string& tok, int line_no) {
    std::size_t pos = 0;
    long long v = -1;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.size() || v < 0)
        fail(errc::parse, "line " + std::to_string(line_no) + ": bad node id '" + tok + "'");
    return v;
}

} // namespace

Graph read_edge_list(std::istream& in, std::optional<int> n) {
    std::vector<std::pair<int, int>> edges;
    std::optional<int> directive_n;
    long long max_id = -1;
    std::string line;
    int line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos)
            continue;
        if (line[start] == '#') {
            std::istringstream c(line.substr(start + 1));
            std::string word;
            if (c >> word && word.rfind("n=", 0) == 0 && !directive_n) {
                try {
                    directive_n = std::stoi(word.substr(2));
                } catch (const std::exception&) {
                    fail(errc::parse, "line " + std::to_string(line_no) + ": bad node count directive");
                }
            }
            continue;
        }
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a >> b))
            fail(errc::parse, "line " + std::to_string(line_no) + ": expected two node ids");
        if (ls >> extra)
            fail(errc::parse, "line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
        long long i = parse_node(a, line_no);
        long long j = parse_node(b, line_no);
        if (i == j)
            fail(errc::invalid_argument, "line " + std::to_string(line_no) + ": self loop at node " + a);
        max_id = std::max({max_id, i, j});
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }

    std::optional<int> resolved = n ? n : directive_n;
    if (resolved) {
        if (*resolved <= 0)
            fail(errc::invalid_argument, "node count must be positive");
        if (max_id >= *resolved)
            fail(errc::range, "node id " + std::to_string(max_id) + " exceeds declared n=" +
                                  std::to_string(*resolved));
    } else {
        if (max_id < 0)
            fail(errc::parse, "empty edge list and no node count given");
        resolved = static_cast<int>(max_id) + 1;
    }
    return Graph::from_edges(*resolved, edges);
}

Graph read_edge_list_file(const std::string& path, std::optional<int> n) {
    std::ifstream in(path);
    if (!in)
        fail(errc::io, "cannot open '" + path + "'");
    return read_edge_list(in, n);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << "# n=" << g.node_count() << "\n";
    g.for_each_edge([&](int i, int j) { out << i << " " << j << "\n"; });
}

std::string edge_list_text(const Graph& g) {
    std::ostringstream out;
    write_edge_list(g, out);
    return out.str();
}

} // namespace netgof
