#pragma once

#include <cstdint>

namespace remknap {

// SplitMix64. Chosen over <random> engines because its output, and the
// mapping to doubles below, are bit-identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on (0, 1]: top 53 bits shifted into the mantissa, plus one so
    // the result is never zero.
    double next_unit() {
        return static_cast<double>((next() >> 11) + 1) * 0x1p-53;
    }

    // Uniform on {0, ..., bound-1} via the multiply-shift reduction.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    bool next_bool() { return (next() & 1u) != 0; }

private:
    std::uint64_t state_;
};

} // namespace remknap
