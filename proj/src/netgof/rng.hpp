#pragma once

#include <cstdint>

namespace netgof {

// Counter-based generator: every random word is a pure function of
// (seed, stream, counter), so any draw can be reproduced in isolation and
// parallel schedules cannot change the result.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RngSpec with_stream(std::uint64_t s) const { return {seed, s}; }
};

// Stream layout used by the simulation drivers: an 8-bit purpose tag, a
// 24-bit cell id and a 32-bit replicate index.
inline std::uint64_t stream_id(std::uint64_t purpose, std::uint64_t cell, std::uint64_t replicate) {
    return (purpose << 56) | ((cell & 0xffffffu) << 32) | (replicate & 0xffffffffu);
}

namespace rng {

std::uint64_t mix64(std::uint64_t x);
std::uint64_t word(const RngSpec& spec, std::uint64_t counter);
// Uniform on the open interval (0,1); never returns an endpoint.
double u01(const RngSpec& spec, std::uint64_t counter);
// Standard normal via the inverse distribution function.
double normal(const RngSpec& spec, std::uint64_t counter);

} // namespace rng

// Sequential view of a stream for call sites that just need "the next draw".
class CounterRng {
public:
    explicit CounterRng(RngSpec spec) : spec_(spec) {}

    std::uint64_t word() { return rng::word(spec_, next_++); }
    double u01() { return rng::u01(spec_, next_++); }
    double normal() { return rng::normal(spec_, next_++); }

private:
    RngSpec spec_;
    std::uint64_t next_ = 0;
};

} // namespace netgof
