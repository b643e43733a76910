#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "netgof/csv.hpp"
#include "netgof/edge_list.hpp"
#include "netgof/graph.hpp"
#include "netgof/prob_matrix.hpp"
#include "oracles.hpp"

using namespace netgof;

TEST_SUITE("graph") {

TEST_CASE("from_edges collapses duplicates and reversed pairs") {
    Graph g = Graph::from_edges(4, {{0, 1}, {1, 0}, {0, 1}, {2, 3}});
    CHECK(g.node_count() == 4);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(!g.has_edge(0, 2));
    CHECK(!g.has_edge(2, 2));
    CHECK(g.degrees() == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("builder rejects self loops and out-of-range nodes") {
    GraphBuilder b(3);
    CHECK_THROWS_AS(b.add_edge(1, 1), Error);
    CHECK_THROWS_AS(b.add_edge(0, 3), Error);
    CHECK_THROWS_AS(b.add_edge(-1, 0), Error);
}

TEST_CASE("edge visitation is lexicographic and complete") {
    Graph g = testoracle::random_graph(9, 0.5, 77);
    std::vector<std::pair<int, int>> seen;
    g.for_each_edge([&](int i, int j) { seen.emplace_back(i, j); });
    CHECK(static_cast<std::int64_t>(seen.size()) == g.edge_count());
    for (std::size_t k = 1; k < seen.size(); ++k)
        CHECK(seen[k - 1] < seen[k]);
    for (auto [i, j] : seen) {
        CHECK(i < j);
        CHECK(g.has_edge(i, j));
    }
}

TEST_CASE("adjacency lists match has_edge") {
    Graph g = testoracle::random_graph(8, 0.4, 5);
    auto adj = g.adjacency();
    REQUIRE(adj.size() == 8);
    for (int i = 0; i < 8; ++i) {
        CHECK(static_cast<int>(adj[static_cast<std::size_t>(i)].size()) ==
              g.degrees()[static_cast<std::size_t>(i)]);
        for (int j : adj[static_cast<std::size_t>(i)])
            CHECK(g.has_edge(i, j));
    }
}

TEST_CASE("summary counts match brute force") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Graph g = testoracle::random_graph(12, 0.45, seed);
        DegreeSummary s = summarize(g);
        std::int64_t edges = 0, wedges = 0, triangles = 0;
        for (int i = 0; i < 12; ++i)
            for (int j = i + 1; j < 12; ++j) {
                if (g.has_edge(i, j))
                    ++edges;
                for (int k = j + 1; k < 12; ++k) {
                    wedges += g.has_edge(i, j) && g.has_edge(i, k);
                    wedges += g.has_edge(i, j) && g.has_edge(j, k);
                    wedges += g.has_edge(i, k) && g.has_edge(j, k);
                    triangles += g.has_edge(i, j) && g.has_edge(i, k) && g.has_edge(j, k);
                }
            }
        CHECK(s.edges == edges);
        CHECK(s.wedges == wedges);
        CHECK(s.triangles == triangles);
        CHECK(s.degrees == g.degrees());
        std::int64_t degree_sum = 0, degree_sq = 0;
        for (int d : s.degrees) {
            degree_sum += d;
            degree_sq += static_cast<std::int64_t>(d) * d;
        }
        CHECK(degree_sum == 2 * s.edges);
        CHECK(degree_sq == 2 * s.edges + 2 * s.wedges);
    }
}

} // TEST_SUITE("graph")

TEST_SUITE("edge-list") {

TEST_CASE("round trip preserves isolated nodes via the count directive") {
    Graph g = Graph::from_edges(6, {{0, 2}, {4, 5}});
    std::string text = edge_list_text(g);
    CHECK(text.rfind("# n=6", 0) == 0);
    std::istringstream in(text);
    Graph back = read_edge_list(in);
    CHECK(back.node_count() == 6);
    CHECK(back.edge_count() == 2);
    CHECK(back.has_edge(0, 2));
    CHECK(back.has_edge(4, 5));
}

TEST_CASE("reader infers the node count when no directive is present") {
    std::istringstream in("0 3\n2 1\n");
    Graph g = read_edge_list(in);
    CHECK(g.node_count() == 4);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("explicit count wins over the directive") {
    std::istringstream in("# n=4\n0 1\n");
    Graph g = read_edge_list(in, 9);
    CHECK(g.node_count() == 9);
}

TEST_CASE("comments, blank lines and duplicate pairs are tolerated") {
    std::istringstream in("# a comment\n\n  \n1 0\n0 1\n# n=3\n");
    Graph g = read_edge_list(in);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("malformed input is rejected with the offending line") {
    auto read = [](const std::string& text, std::optional<int> n = std::nullopt) {
        std::istringstream in(text);
        return read_edge_list(in, n);
    };
    CHECK_THROWS_WITH_AS(read("0\n"), doctest::Contains("line 1"), Error);
    CHECK_THROWS_WITH_AS(read("0 1 2\n"), doctest::Contains("trailing"), Error);
    CHECK_THROWS_WITH_AS(read("0 x\n"), doctest::Contains("bad node id"), Error);
    CHECK_THROWS_WITH_AS(read("0 -2\n"), doctest::Contains("bad node id"), Error);
    CHECK_THROWS_WITH_AS(read("3 3\n"), doctest::Contains("self loop"), Error);
    CHECK_THROWS_WITH_AS(read("0 7\n", 4), doctest::Contains("exceeds"), Error);
    CHECK_THROWS_AS(read(""), Error);
    CHECK_THROWS_AS(read("# n=zz\n0 1\n"), Error);
    CHECK(read("", 5).node_count() == 5);
}

} // TEST_SUITE("edge-list")

TEST_SUITE("prob-matrix") {

TEST_CASE("storage is symmetric with a zero diagonal") {
    ProbMatrix p(3);
    p.set(2, 0, 0.25);
    CHECK(p(0, 2) == 0.25);
    CHECK(p(2, 0) == 0.25);
    CHECK(p(1, 1) == 0.0);
    CHECK_THROWS_AS(p.set(0, 0, 0.5), Error);
    CHECK_THROWS_AS(p.set(0, 1, 1.5), Error);
    CHECK_THROWS_AS(p.set(0, 1, -0.1), Error);
    CHECK_THROWS_AS(p.set(0, 3, 0.5), Error);
}

TEST_CASE("constant and dense constructors agree") {
    ProbMatrix c = ProbMatrix::constant(4, 0.3);
    std::vector<double> dense(16, 0.3);
    for (int i = 0; i < 4; ++i)
        dense[static_cast<std::size_t>(i) * 4 + static_cast<std::size_t>(i)] = 0.0;
    ProbMatrix d = ProbMatrix::from_dense(4, dense);
    CHECK(c.cells() == d.cells());
    CHECK(c.mean_offdiagonal() == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("from_dense validates shape, symmetry and diagonal") {
    std::vector<double> bad_sym = {0, 0.2, 0.3, 0, 0, 0.4, 0.31, 0.4, 0};
    CHECK_THROWS_AS(ProbMatrix::from_dense(3, bad_sym), Error);
    std::vector<double> bad_diag = {0.1, 0.2, 0.2, 0};
    CHECK_THROWS_AS(ProbMatrix::from_dense(2, bad_diag), Error);
    CHECK_THROWS_AS(ProbMatrix::from_dense(3, std::vector<double>(8, 0.0)), Error);
}

TEST_CASE("row sums are the expected degrees") {
    ProbMatrix p = testoracle::random_prob_matrix(7, 99);
    auto sums = p.row_sums();
    for (int i = 0; i < 7; ++i) {
        double s = 0.0;
        for (int j = 0; j < 7; ++j)
            s += p(i, j);
        CHECK(sums[static_cast<std::size_t>(i)] == doctest::Approx(s).epsilon(1e-14));
    }
}

TEST_CASE("csv round trip keeps ten significant digits") {
    ProbMatrix p = testoracle::random_prob_matrix(5, 4242);
    std::ostringstream out;
    write_prob_matrix_csv(p, out);
    std::istringstream in(out.str());
    ProbMatrix back = read_prob_matrix_csv(in);
    REQUIRE(back.node_count() == 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(back(i, j) == doctest::Approx(p(i, j)).epsilon(1e-9));
}

TEST_CASE("csv reader rejects malformed input") {
    auto read = [](const std::string& text) {
        std::istringstream in(text);
        return read_prob_matrix_csv(in);
    };
    CHECK_THROWS_AS(read(""), Error);
    CHECK_THROWS_AS(read("2\n0,0.5\n"), Error);
    CHECK_THROWS_AS(read("2\n0,0.5\n0.5,0\n0,0\n"), Error);
    CHECK_THROWS_AS(read("2\n0,x\nx,0\n"), Error);
    CHECK_THROWS_AS(read("2\n0,0.5\n0.4,0\n"), Error);
    CHECK_THROWS_AS(read("2\n0.2,0.5\n0.5,0.2\n"), Error);
    CHECK_THROWS_AS(read("0\n"), Error);
}

} // TEST_SUITE("prob-matrix")

TEST_SUITE("csv") {

TEST_CASE("floats render with ten significant digits") {
    CHECK(fmt_g10(0.1) == "0.1");
    CHECK(fmt_g10(1.0 / 3.0) == "0.3333333333");
    CHECK(fmt_g10(5.0) == "5");
    CHECK(fmt_g10(-2.5e-12) == "-2.5e-12");
    CHECK(fmt_g10(1234567890.123) == "1234567890");
}

TEST_CASE("line splitting keeps empty fields") {
    CHECK(split_csv_line("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_csv_line("a,,c,") == std::vector<std::string>{"a", "", "c", ""});
    CHECK(split_csv_line("x") == std::vector<std::string>{"x"});
    CHECK(split_csv_line("a,b\r") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("numeric fields carry their line number into errors") {
    CHECK(parse_double_field("2.5", 1) == 2.5);
    CHECK(parse_double_field("-1e3", 1) == -1000.0);
    CHECK_THROWS_WITH_AS(parse_double_field("abc", 17), doctest::Contains("line 17"), Error);
    CHECK_THROWS_AS(parse_double_field("", 1), Error);
    CHECK_THROWS_AS(parse_double_field("1.5x", 1), Error);
}

TEST_CASE("atomic writes land complete and leave no temp files") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "netgof-io-test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string path = (dir / "out.txt").string();
    write_file_atomic(path, "first\n");
    CHECK(read_file(path) == "first\n");
    write_file_atomic(path, "second\n");
    CHECK(read_file(path) == "second\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir))
        ++entries;
    CHECK(entries == 1);
    write_file_atomic((dir / "sub" / "nested.txt").string(), "x");
    CHECK(read_file((dir / "sub" / "nested.txt").string()) == "x");
    CHECK_THROWS_AS(read_file((dir / "missing.txt").string()), Error);
    fs::remove_all(dir);
}

} // TEST_SUITE("csv")
