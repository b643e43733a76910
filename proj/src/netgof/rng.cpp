#include "netgof/rng.hpp"

#include "netgof/normal.hpp"

namespace netgof {
namespace rng {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t word(const RngSpec& spec, std::uint64_t counter) {
    return mix64(mix64(mix64(spec.seed) ^ spec.stream) ^ counter);
}

double u01(const RngSpec& spec, std::uint64_t counter) {
    // 53 uniform bits, centered half a step away from both 0 and 1.
    return (static_cast<double>(word(spec, counter) >> 11) + 0.5) * 0x1p-53;
}

double normal(const RngSpec& spec, std::uint64_t counter) {
    return std_normal_quantile(u01(spec, counter));
}

} // namespace rng
} // namespace netgof
