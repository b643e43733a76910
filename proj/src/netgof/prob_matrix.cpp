#include "netgof/prob_matrix.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "netgof/csv.hpp"

namespace netgof {

namespace {

void check_prob(double p, const std::string& where) {
    if (!(p >= 0.0 && p <= 1.0))
        fail(errc::range, where + ": probability " + fmt_g10(p) + " outside [0,1]");
}

} // namespace

ProbMatrix::ProbMatrix(int n) : n_(n) {
    if (n <= 0)
        fail(errc::invalid_argument, "probability matrix needs a positive node count");
    cells_.assign(pair_count(n), 0.0);
}

ProbMatrix ProbMatrix::constant(int n, double p) {
    check_prob(p, "constant matrix");
    ProbMatrix m(n);
    for (auto& c : m.cells_)
        c = p;
    return m;
}

ProbMatrix ProbMatrix::from_dense(int n, const std::vector<double>& row_major) {
    if (row_major.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        fail(errc::dimension, "dense matrix has wrong size");
    ProbMatrix m(n);
    for (int i = 0; i < n; ++i) {
        double diag = row_major[static_cast<std::size_t>(i) * n + i];
        if (diag != 0.0)
            fail(errc::invalid_argument, "diagonal entry (" + std::to_string(i) + "," +
                                             std::to_string(i) + ") must be 0");
        for (int j = i + 1; j < n; ++j) {
            double a = row_major[static_cast<std::size_t>(i) * n + j];
            double b = row_major[static_cast<std::size_t>(j) * n + i];
            if (a != b)
                fail(errc::invalid_argument, "asymmetric entries at (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ")");
            check_prob(a, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
            m.cells_[pair_index(n, i, j)] = a;
        }
    }
    return m;
}

void ProbMatrix::set(int i, int j, double p) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j)
        fail(errc::range, "bad pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    check_prob(p, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    if (i > j)
        std::swap(i, j);
    cells_[pair_index(n_, i, j)] = p;
}

std::vector<double> ProbMatrix::row_sums() const {
    std::vector<KahanSum> acc(static_cast<std::size_t>(n_));
    std::size_t q = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j, ++q) {
            acc[static_cast<std::size_t>(i)].add(cells_[q]);
            acc[static_cast<std::size_t>(j)].add(cells_[q]);
        }
    std::vector<double> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
        out[static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(i)].value();
    return out;
}

double ProbMatrix::mean_offdiagonal() const {
    if (cells_.empty())
        fail(errc::invalid_argument, "matrix with a single node has no off-diagonal entries");
    KahanSum s;
    for (double c : cells_)
        s.add(c);
    return s.value() / static_cast<double>(cells_.size());
}

ProbMatrix read_prob_matrix_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&](const char* what) {
        if (!std::getline(in, line))
            fail(errc::parse, "unexpected end of file, expected " + std::string(what));
        ++line_no;
        return line;
    };

    next_line("node count");
    int n = 0;
    try {
        std::size_t pos = 0;
        n = std::stoi(line, &pos);
        if (pos != line.size() && line.find_first_not_of(" \t\r", pos) != std::string::npos)
            throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        fail(errc::parse, "line 1: bad node count '" + line + "'");
    }
    if (n <= 0)
        fail(errc::invalid_argument, "node count must be positive");

    std::vector<double> dense(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        next_line("matrix row");
        auto fields = split_csv_line(line);
        if (fields.size() != static_cast<std::size_t>(n))
            fail(errc::parse, "line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                                  " fields, got " + std::to_string(fields.size()));
        for (int j = 0; j < n; ++j)
            dense[static_cast<std::size_t>(i) * n + j] = parse_double_field(fields[static_cast<std::size_t>(j)], line_no);
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            fail(errc::parse,
                 "line " + std::to_string(line_no) + ": unexpected content after the matrix");
    }
    return ProbMatrix::from_dense(n, dense);
}

ProbMatrix read_prob_matrix_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(errc::io, "cannot open '" + path + "'");
    return read_prob_matrix_csv(in);
}

void write_prob_matrix_csv(const ProbMatrix& p, std::ostream& out) {
    int n = p.node_count();
    out << n << "\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j)
                out << ",";
            out << fmt_g10(p(i, j));
        }
        out << "\n";
    }
}

} // namespace netgof
