#pragma once

#include <cstdint>

namespace cnsp {

// splitmix64. Fixed here as the project-wide random stream so that any
// reimplementation in another language reproduces identical byte streams:
// state advance 0x9E3779B97F4A7C15, then the standard two-multiply finalizer.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound). Modulo reduction: biased for huge
    // bounds, deterministic everywhere, which is what matters here.
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t next_range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform double in [0, 1) from the top 53 bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

} // namespace cnsp
