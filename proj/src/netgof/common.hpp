#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace netgof {

enum class errc {
    invalid_argument, // bad parameter or unusable configuration
    parse,            // malformed input text
    dimension,        // size mismatch between objects
    range,            // value outside its admissible range
    degenerate,       // null distribution has zero spread
    numeric,          // internal numerical consistency failure
    io,               // file system failure
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

// Neumaier-compensated accumulator for the O(n^2)-term sums in the moment
// formulas, where plain summation loses digits.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

inline std::size_t pair_count(int n) {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

// Index of the unordered pair {i,j}, i<j, in row-major upper-triangular order.
inline std::size_t pair_index(int n, int i, int j) {
    return static_cast<std::size_t>(i) * (2u * static_cast<std::size_t>(n) - i - 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
}

} // namespace netgof
