#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "netgof/common.hpp"

namespace netgof {

// Symmetric matrix of edge probabilities with a zero diagonal; only the upper
// triangle is stored.
class ProbMatrix {
public:
    ProbMatrix() = default;
    explicit ProbMatrix(int n);
    static ProbMatrix constant(int n, double p);
    static ProbMatrix from_dense(int n, const std::vector<double>& row_major);

    int node_count() const { return n_; }

    double operator()(int i, int j) const {
        if (i == j)
            return 0.0;
        if (i > j)
            std::swap(i, j);
        return cells_[pair_index(n_, i, j)];
    }

    void set(int i, int j, double p);

    const std::vector<double>& cells() const { return cells_; } // pair-indexed, i<j

    std::vector<double> row_sums() const; // expected degree of each node
    double mean_offdiagonal() const;

private:
    int n_ = 0;
    std::vector<double> cells_;
};

// CSV form: first line is n, then n rows of n comma-separated entries.
ProbMatrix read_prob_matrix_csv(std::istream& in);
ProbMatrix read_prob_matrix_csv_file(const std::string& path);
void write_prob_matrix_csv(const ProbMatrix& p, std::ostream& out);

} // namespace netgof
